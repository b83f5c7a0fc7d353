"""
Logging configuration for the Harbourne index toolkit

Centralizes logging setup. Records go to stderr; reports written to stdout
stay machine-readable.
"""

import logging
from typing import Optional

from .config import config
from .errors import InvalidInputError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def setup_logging(level: Optional[str] = None):
    """Setup logging configuration"""
    name = (level or config.LOG_LEVEL).upper()
    if name not in LOG_LEVELS:
        raise InvalidInputError(f"unknown log level {name!r}, expected one of {', '.join(LOG_LEVELS)}")
    logging.basicConfig(
        level=getattr(logging, name),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    logging.getLogger("sqlalchemy.engine").setLevel(logging.WARNING)

    return logging.getLogger(__name__)
