import os
import sys

from loguru import logger

_FORMAT = "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan> - <level>{message}</level>"


def configure_logging(level: str | None = None) -> None:
    """Replace loguru's default sink with a single stderr sink.

    Args:
        level: Minimum level to emit; falls back to ``SI_LOG_LEVEL`` or INFO.
    """
    logger.remove()
    logger.add(sys.stderr, level=(level or os.getenv("SI_LOG_LEVEL", "INFO")).upper(), format=_FORMAT)


__all__ = ["configure_logging", "logger"]
