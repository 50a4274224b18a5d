"""
Core data models shared across the strata-atlas engine.
"""
from dataclasses import dataclass, field
from enum import Enum, auto
from typing import Any, Optional
import uuid
import threading


class Family(Enum):
    """One-dimensional signature families."""
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    NOT_ONE_DIMENSIONAL = "not-one-dimensional"


class TaskStatus(Enum):
    """Sweep task state machine states."""
    QUEUED = auto()
    RUNNING = auto()
    COMPLETED = auto()
    FAILED = auto()
    CANCELED = auto()


# ==================== Errors ====================

class AtlasError(Exception):
    """Base class for all engine errors."""
    pass


class ParseError(AtlasError):
    """Signature text does not match the grammar."""
    pass


class ValidationError(AtlasError):
    """Data is well formed but violates a constraint."""
    pass


class UnsupportedFamily(AtlasError):
    """The signature lies outside the families the engine handles."""
    pass


class InvalidHalfArc(AtlasError):
    """A half-arc label does not belong to the star of its boundary point."""
    pass


class DegenerateDiagram(AtlasError):
    """An arc diagram does not contract to a principal boundary."""
    pass


class ClosureError(AtlasError):
    """A U image left the enumerated vertex set."""
    pass


class InconsistencyError(AtlasError):
    """An invariant that must be constant on a component is not."""
    pass


class Undefined(AtlasError):
    """An invariant is requested where it is not defined."""
    pass


# ==================== Results ====================

@dataclass
class PredictedCount:
    """Component counts predicted by the classification for one stratum."""
    hyperelliptic: int
    non_hyperelliptic: Optional[int] = None
    by_index: Optional[dict[int, int]] = None
    modulus: Optional[int] = None
    by_spin: Optional[dict[int, int]] = None
    exception: Optional[str] = None
    flags: list[str] = field(default_factory=list)

    @property
    def non_hyperelliptic_total(self) -> int:
        if self.by_index is not None:
            return sum(self.by_index.values())
        if self.by_spin is not None:
            return sum(self.by_spin.values())
        return self.non_hyperelliptic or 0

    @property
    def total(self) -> int:
        return self.hyperelliptic + self.non_hyperelliptic_total

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "hyperelliptic": self.hyperelliptic,
            "non_hyperelliptic": self.non_hyperelliptic_total,
            "total": self.total,
        }
        if self.by_index is not None:
            data["by_index"] = {str(k): v for k, v in sorted(self.by_index.items())}
            data["modulus"] = self.modulus
        if self.by_spin is not None:
            data["by_spin"] = {str(k): v for k, v in sorted(self.by_spin.items())}
        if self.exception:
            data["exception"] = self.exception
        return data


@dataclass
class ComponentReport:
    """A connected component of an equatorial net with its invariants."""
    id: int
    vertices: list[int]
    hyperelliptic: bool = False
    profile: Optional[Any] = None  # RamificationProfile
    index: Optional[tuple[int, int]] = None  # (value, modulus)
    spin: Optional[int] = None
    flags: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "size": self.size,
            "hyperelliptic": self.hyperelliptic,
            "profile": self.profile.to_dict() if self.profile is not None else None,
            "index": (
                {"value": self.index[0], "modulus": self.index[1]}
                if self.index is not None else None
            ),
            "spin": self.spin,
        }


@dataclass
class VerdictRecord:
    """Outcome of verifying one stratum against its predicted counts."""
    signature: str
    family: str
    verdict: str  # "match", "mismatch", "error" or "probe"
    computed: dict[str, Any] = field(default_factory=dict)
    predicted: dict[str, Any] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict in ("match", "probe") and not self.details

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "signature": self.signature,
            "verdict": self.verdict,
            "computed": self.computed,
            "predicted": self.predicted,
        }
        if self.details:
            data["details"] = list(self.details)
        if self.flags:
            data["flags"] = list(self.flags)
        return data


# ==================== Sweep tasks ====================

class CancelToken:
    """Thread-safe cancellation token for sweep tasks."""

    def __init__(self):
        self._cancelled = threading.Event()

    def cancel(self):
        """Request cancellation."""
        self._cancelled.set()

    @property
    def is_cancelled(self) -> bool:
        return self._cancelled.is_set()

    def check(self) -> None:
        """Raise if cancelled."""
        if self._cancelled.is_set():
            raise CancelledException("Sweep was cancelled")


class CancelledException(Exception):
    """Raised when a sweep is cancelled."""
    pass


@dataclass
class SweepTask:
    """One stratum queued for verification."""
    signature: str
    id: str = field(default_factory=lambda: str(uuid.uuid4())[:8])
    status: TaskStatus = TaskStatus.QUEUED
    verdict: Optional[VerdictRecord] = None
    errors: list[str] = field(default_factory=list)
    elapsed: float = 0.0
    cancel_token: CancelToken = field(default_factory=CancelToken)

    @property
    def status_text(self) -> str:
        status_map = {
            TaskStatus.QUEUED: "Queued",
            TaskStatus.RUNNING: "Running",
            TaskStatus.COMPLETED: "Completed",
            TaskStatus.FAILED: "Failed",
            TaskStatus.CANCELED: "Canceled",
        }
        return status_map.get(self.status, str(self.status))
