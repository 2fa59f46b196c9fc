from .errors import SubtreeIndexError
from .logger import configure_logging, logger

__all__ = ["SubtreeIndexError", "configure_logging", "logger"]
