"""Infrastructure layer - External system implementations.

Contains:
- Configuration (pydantic-settings, pydantic run configs)
- Logging (structlog)
- File adapters (pandas CSV readers, run directories) in ``infrastructure.files``
"""

from infrastructure.config import RunConfig, Settings, get_settings, load_run_config
from infrastructure.logging import get_logger, setup_logging

__all__ = [
    # Config
    "Settings",
    "get_settings",
    "RunConfig",
    "load_run_config",
    # Logging
    "setup_logging",
    "get_logger",
]
