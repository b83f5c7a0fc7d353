"""
Exception hierarchy for the Harbourne index toolkit.

Every error raised on purpose derives from HarbourneError so the CLI can map
it to a stable exit code.
"""

from typing import Optional


class HarbourneError(Exception):
    """Base class for all toolkit errors"""


class InvalidInputError(HarbourneError, ValueError):
    """A domain value is malformed or out of range"""


class UnsupportedConfigurationError(HarbourneError):
    """The configuration is outside what an operation supports"""


class NoSingularPointsError(HarbourneError):
    """The Harbourne index is undefined for configurations with s = 0"""

    def __init__(self, message: str = "configuration has no singular points (s = 0); the index is undefined"):
        super().__init__(message)


class InconsistentSelectionError(HarbourneError):
    """A point selection uses more r-fold points than the configuration has"""


class AdjunctionError(HarbourneError):
    """A component violates 2g - 2 = C^2 + K.C"""


class MixedGenusError(HarbourneError):
    """A homogeneous-genus evaluator was given components of different genera"""

    def __init__(self, genera):
        super().__init__(
            f"components have mixed genera {sorted(set(genera))}; "
            f"use the inhomogeneous bounds instead"
        )


class BoundNotApplicableError(HarbourneError):
    """A bound was requested outside its hypotheses"""

    def __init__(self, reason: str, message: Optional[str] = None):
        self.reason = reason
        super().__init__(message or reason)


class EnumerationLimitError(HarbourneError):
    """Enumeration parameters are out of range or a guardrail tripped"""


class ConfigFileError(HarbourneError):
    """A configuration file could not be read or validated"""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        text = f"{location}: {message}" if location else message
        super().__init__(text)
