"""
Event System for the Harbourne index toolkit
Decouples result persistence from the commands that produce results.
"""
import logging
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

logger = logging.getLogger(__name__)


@dataclass
class ReportCreatedEvent:
    """Event raised when a report has been evaluated"""
    source: str
    index: Fraction
    verdict: str
    payload: str
    timestamp: datetime = field(default_factory=datetime.now)


@dataclass
class ScanCompletedEvent:
    """Event raised when a pseudoline enumeration or scan finishes"""
    k: int
    # (CanonicalClass, index, shnurnikov margin) per class, in enumeration order
    classes: List[Tuple[Any, Fraction, Fraction]]
    result: Any = None
    timestamp: datetime = field(default_factory=datetime.now)


class EventBus:
    """
    Synchronous event bus.
    Handler failures are logged and never reach the publisher.
    """

    def __init__(self):
        self._handlers: Dict[str, List[Callable]] = {}

    def subscribe(self, event_type: str, handler: Callable):
        """Subscribe to an event type"""
        if event_type not in self._handlers:
            self._handlers[event_type] = []
        self._handlers[event_type].append(handler)
        logger.debug(f"Subscribed handler to event: {event_type}")

    def clear(self):
        self._handlers.clear()

    def publish(self, event_type: str, event_data: Any):
        """Publish an event to all subscribers"""
        if event_type not in self._handlers:
            logger.debug(f"No handlers for event: {event_type}")
            return

        logger.debug(f"Publishing event: {event_type}")

        for handler in self._handlers[event_type]:
            try:
                handler(event_data)
            except Exception as e:
                logger.error(f"Error in event handler for {event_type}: {e}")

    def publish_report_created(self, event: ReportCreatedEvent):
        """Publish report created event"""
        self.publish('report_created', event)

    def publish_scan_completed(self, event: ScanCompletedEvent):
        """Publish scan completed event"""
        self.publish('scan_completed', event)


# Global event bus instance
event_bus = EventBus()
