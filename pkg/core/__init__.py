# Core module - Signatures, boundary points, equatorial nets and verification
from .models import (
    Family,
    TaskStatus,
    AtlasError,
    ParseError,
    ValidationError,
    UnsupportedFamily,
    InvalidHalfArc,
    DegenerateDiagram,
    ClosureError,
    InconsistencyError,
    Undefined,
    PredictedCount,
    ComponentReport,
    VerdictRecord,
    SweepTask,
    CancelToken,
)
from .signature import Signature, parse_signature, dimension, classify_one_dim, ramification_profiles
from .boundary import BoundaryPoint, HalfArc, enumerate_boundaries, canonicalize, half_arcs
from .family_interface import FamilyInterface, FAMILY_API_VERSION
from .family_manager import FamilyManager, get_family_manager
from .net import ArcDiagram, EquatorialNet, plumb, contract, u_move, r_move, build_net
from .invariants import component_invariants, index_B, index_D, spin_D
from .verify import predicted_components, verify_stratum, sweep, probe_conjecture, SweepReport
from .task_manager import SweepManager
from .event_bus import EventBus, Event, EventType

__all__ = [
    "Family",
    "TaskStatus",
    "AtlasError",
    "ParseError",
    "ValidationError",
    "UnsupportedFamily",
    "InvalidHalfArc",
    "DegenerateDiagram",
    "ClosureError",
    "InconsistencyError",
    "Undefined",
    "PredictedCount",
    "ComponentReport",
    "VerdictRecord",
    "SweepTask",
    "CancelToken",
    "Signature",
    "parse_signature",
    "dimension",
    "classify_one_dim",
    "ramification_profiles",
    "BoundaryPoint",
    "HalfArc",
    "enumerate_boundaries",
    "canonicalize",
    "half_arcs",
    "FamilyInterface",
    "FAMILY_API_VERSION",
    "FamilyManager",
    "get_family_manager",
    "ArcDiagram",
    "EquatorialNet",
    "plumb",
    "contract",
    "u_move",
    "r_move",
    "build_net",
    "component_invariants",
    "index_B",
    "index_D",
    "spin_D",
    "predicted_components",
    "verify_stratum",
    "sweep",
    "probe_conjecture",
    "SweepReport",
    "SweepManager",
    "EventBus",
    "Event",
    "EventType",
]
