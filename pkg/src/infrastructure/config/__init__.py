"""Configuration management using pydantic-settings."""

from infrastructure.config.run_config import (
    ReviewColumns,
    RunConfig,
    apply_overrides,
    load_run_config,
    validate_run_config,
)
from infrastructure.config.settings import Settings, get_settings

__all__ = [
    "Settings",
    "get_settings",
    "RunConfig",
    "ReviewColumns",
    "load_run_config",
    "apply_overrides",
    "validate_run_config",
]
