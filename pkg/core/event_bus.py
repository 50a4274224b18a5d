"""
Event bus for decoupled communication between the engine, the sweep
runner and the command line.
"""
from dataclasses import asdict, dataclass, field
from enum import Enum, auto
from typing import Any, Callable
from collections import defaultdict
import logging
import threading
import queue

log = logging.getLogger(__name__)


class EventType(Enum):
    """Types of events in the application."""
    # Sweep events
    SWEEP_STARTED = auto()
    SWEEP_COMPLETED = auto()
    STRATUM_QUEUED = auto()
    STRATUM_STARTED = auto()
    STRATUM_VERIFIED = auto()
    STRATUM_FAILED = auto()
    STRATUM_CANCELED = auto()
    SWEEP_PROGRESS = auto()

    # Family plugin events
    FAMILY_LOADED = auto()
    FAMILY_ERROR = auto()

    # Log events
    LOG_INFO = auto()
    LOG_WARNING = auto()
    LOG_ERROR = auto()
    LOG_DEBUG = auto()


LOG_EVENT_LEVELS = {
    EventType.LOG_DEBUG: logging.DEBUG,
    EventType.LOG_INFO: logging.INFO,
    EventType.LOG_WARNING: logging.WARNING,
    EventType.LOG_ERROR: logging.ERROR,
}


@dataclass
class Event:
    """An event with type and payload."""
    type: EventType
    payload: dict[str, Any] = field(default_factory=dict)
    source: str = ""


@dataclass(frozen=True)
class SweepProgress:
    """Counts of a running sweep after one stratum finished."""
    done: int
    total: int
    signature: str
    verdict: str
    mismatches: int = 0
    failed: int = 0

    @property
    def fraction(self) -> float:
        return self.done / self.total if self.total else 1.0

    def to_event(self, source: str = "sweep") -> Event:
        return Event(type=EventType.SWEEP_PROGRESS, payload=asdict(self), source=source)

    @classmethod
    def from_event(cls, event: Event) -> "SweepProgress":
        if event.type != EventType.SWEEP_PROGRESS:
            raise ValueError(f"{event.type.name} does not carry sweep progress")
        return cls(**event.payload)


class EventBus:
    """
    Thread-safe event bus for publishing and subscribing to events.
    Supports both immediate callbacks and queued events drained by the CLI.
    """

    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        """Singleton pattern for global event bus."""
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return
        self._initialized = True
        self._subscribers: dict[EventType, list[Callable]] = defaultdict(list)
        self._queue: queue.Queue[Event] = queue.Queue()
        self._lock = threading.Lock()

    def subscribe(self, event_type: EventType, callback: Callable[[Event], None]) -> None:
        """Subscribe to an event type."""
        with self._lock:
            if callback not in self._subscribers[event_type]:
                self._subscribers[event_type].append(callback)

    def unsubscribe(self, event_type: EventType, callback: Callable[[Event], None]) -> None:
        """Unsubscribe from an event type."""
        with self._lock:
            if callback in self._subscribers[event_type]:
                self._subscribers[event_type].remove(callback)

    def publish(self, event: Event) -> None:
        """
        Publish an event immediately to all subscribers.
        Callbacks run in the publishing thread.
        """
        with self._lock:
            subscribers = list(self._subscribers[event.type])

        for callback in subscribers:
            try:
                callback(event)
            except Exception as e:
                log.warning("Error in event handler: %s", e)

    def publish_to_queue(self, event: Event) -> None:
        """Add event to queue for later processing."""
        self._queue.put(event)

    def process_queue(self, max_events: int = 100) -> int:
        """
        Process queued events.
        Returns number of events processed.
        """
        processed = 0
        while processed < max_events:
            try:
                event = self._queue.get_nowait()
                self.publish(event)
                processed += 1
            except queue.Empty:
                break
        return processed

    def clear_queue(self) -> None:
        """Clear all queued events."""
        while True:
            try:
                self._queue.get_nowait()
            except queue.Empty:
                break

    def emit_progress(self, progress: SweepProgress, source: str = "sweep") -> None:
        """Publish sweep progress immediately, on the thread running the sweep."""
        self.publish(progress.to_event(source))

    def on_progress(self, callback: Callable[[SweepProgress], None]) -> Callable[[Event], None]:
        """
        Subscribe a callback taking SweepProgress values.

        Returns:
            The subscribed handler, for unsubscribe(EventType.SWEEP_PROGRESS, ...)
        """
        def handler(event: Event) -> None:
            callback(SweepProgress.from_event(event))

        self.subscribe(EventType.SWEEP_PROGRESS, handler)
        return handler

    def emit_log(self, level: str, message: str, source: str = "") -> None:
        """Convenience method to emit log events."""
        event_map = {
            "info": EventType.LOG_INFO,
            "warning": EventType.LOG_WARNING,
            "error": EventType.LOG_ERROR,
            "debug": EventType.LOG_DEBUG,
        }
        event_type = event_map.get(level.lower(), EventType.LOG_INFO)
        self.publish_to_queue(Event(
            type=event_type,
            payload={"message": message, "level": level},
            source=source
        ))


def forward_logs(event: Event) -> None:
    """Subscriber that hands log events to the logging module."""
    logger = logging.getLogger(f"strata_atlas.{event.source}" if event.source else "strata_atlas")
    logger.log(LOG_EVENT_LEVELS.get(event.type, logging.INFO), event.payload.get("message", ""))


# Global event bus instance
event_bus = EventBus()
