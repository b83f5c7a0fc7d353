"""
Utilities package for the Harbourne index toolkit

Configuration, logging, errors, exact rationals, flag maps and service wiring.
"""

from .config import Config, config
from .logging_setup import setup_logging
from .dependency_injection import container
from .events import event_bus, ReportCreatedEvent, ScanCompletedEvent

__all__ = [
    'Config',
    'config',
    'setup_logging',
    'container',
    'event_bus',
    'ReportCreatedEvent',
    'ScanCompletedEvent'
]
