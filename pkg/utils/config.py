"""
Configuration management for the Harbourne index toolkit

Centralizes all environment variables and configuration settings.
CLI flags override individual fields for a single invocation.
"""

import os
from typing import Optional


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


class Config:
    """Centralized configuration class for the Harbourne index toolkit"""

    def __init__(self):
        # Logging Configuration
        self.LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

        # Census Store Configuration
        self.DATABASE_URL = os.getenv("DATABASE_URL", "sqlite:///harbourne.db")
        self.STORE_RESULTS = _env_bool("STORE_RESULTS", False)

        # Pseudoline Enumeration Configuration
        self.ENUMERATION_K_LIMIT = int(os.getenv("ENUMERATION_K_LIMIT", "7"))
        self.ENUMERATION_WORKERS = int(os.getenv("ENUMERATION_WORKERS", "1"))
        self.ENUMERATION_MAX_NODES = int(os.getenv("ENUMERATION_MAX_NODES", "20000000"))
        self.ENUMERATION_TIME_LIMIT = float(os.getenv("ENUMERATION_TIME_LIMIT", "1800"))
        self.PSEUDOLINE_SELF_INTERSECTION = int(os.getenv("PSEUDOLINE_SELF_INTERSECTION", "1"))

        # Point selection sweep guardrail
        self.SWEEP_MAX_SELECTIONS = int(os.getenv("SWEEP_MAX_SELECTIONS", "200000"))

    def effective_workers(self, requested: Optional[int] = None) -> int:
        """Resolve a worker count; 0 means one worker per CPU"""
        workers = self.ENUMERATION_WORKERS if requested is None else requested
        if workers <= 0:
            return os.cpu_count() or 1
        return workers


# Global config instance
config = Config()
