"""Application settings using pydantic-settings."""

from functools import lru_cache
from pathlib import Path
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

# Find project root directory (where .env is located)
_current_file = Path(__file__).resolve()
_project_root = _current_file.parent.parent.parent.parent


class Settings(BaseSettings):
    """Process-wide configuration from environment variables (``SMELLFUSE_*``)."""

    model_config = SettingsConfigDict(
        env_file=str(_project_root / ".env"),
        env_file_encoding="utf-8",
        env_prefix="SMELLFUSE_",
        case_sensitive=False,
        extra="ignore",
    )

    # Concurrency for folds and sweep grid points
    max_workers: int = Field(default=2, ge=1)

    # Where run directories go when a config does not name one
    output_root: Path = Path("runs")

    # Logging
    log_level: str = "INFO"
    log_format: Literal["console", "json"] = "console"


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
