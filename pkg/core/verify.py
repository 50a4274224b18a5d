"""
Predicted component counts, per-stratum verification, family sweeps and
the connectedness probe for A signatures.
"""
from dataclasses import dataclass, field
from collections import Counter
from typing import Any, Callable, Iterator, Optional
import logging

from .boundary import family_plugin
from .event_bus import SweepProgress
from .invariants import all_component_invariants, index_data, spin_defined
from .models import (
    ClosureError,
    ComponentReport,
    Family,
    PredictedCount,
    UnsupportedFamily,
    VerdictRecord,
)
from .net import EquatorialNet, build_net
from .settings import DEFAULT_SETTINGS, family_options
from .signature import (
    Signature,
    classify_one_dim,
    parse_signature,
    validate_signature,
)

log = logging.getLogger(__name__)

VERIFIED_FAMILIES = (Family.B, Family.C, Family.D)


# ==================== Engine configuration ====================

def configure_engine(settings: dict[str, Any]) -> None:
    """Hand family options to the loaded plugins, dropping caches when they change."""
    from .family_manager import get_family_manager, set_family_manager

    manager = get_family_manager()
    options = family_options(settings)
    if any(plugin.options != options for plugin in manager.get_all_families()):
        manager.configure(options)
        set_family_manager(manager)


# ==================== Predictions ====================

def predicted_components(sig: Signature) -> PredictedCount:
    """
    Component counts predicted by the classification for a B, C or D stratum.

    Raises:
        UnsupportedFamily: for E, for strata that are not one-dimensional and for
            A strata without a zero of order zero
    """
    return family_plugin(sig).predicted_components(sig)


# ==================== Verification ====================

def computed_breakdown(net: EquatorialNet, reports: list[ComponentReport]) -> dict[str, Any]:
    """Component counts and invariant breakdowns of a built net."""
    sig = net.signature
    non_hyper = [r for r in reports if not r.hyperelliptic]
    data: dict[str, Any] = {
        "vertices": len(net.vertices),
        "arcs": len(net.pairing) // 2,
        "components": len(reports),
        "hyperelliptic": len(reports) - len(non_hyper),
        "non_hyperelliptic": len(non_hyper),
    }
    if index_data(sig) is not None:
        counts = Counter(r.index[0] for r in non_hyper if r.index is not None)
        data["by_index"] = {str(k): v for k, v in sorted(counts.items())}
    if spin_defined(sig):
        counts = Counter(r.spin for r in non_hyper if r.spin is not None)
        data["by_spin"] = {str(k): v for k, v in sorted(counts.items())}
    data["reports"] = [r.to_dict() for r in reports]
    return data


def compare(predicted: PredictedCount, computed: dict[str, Any], reports: list[ComponentReport]) -> list[str]:
    """Differences between predicted and computed counts; empty on a match."""
    details: list[str] = []
    if computed["hyperelliptic"] != predicted.hyperelliptic:
        details.append(
            f"hyperelliptic components: computed {computed['hyperelliptic']}, "
            f"predicted {predicted.hyperelliptic}"
        )
    profiles = [r.profile for r in reports if r.hyperelliptic]
    if len(set(profiles)) != len(profiles):
        details.append("two hyperelliptic components share a ramification profile")

    if computed["non_hyperelliptic"] != predicted.non_hyperelliptic_total:
        details.append(
            f"non-hyperelliptic components: computed {computed['non_hyperelliptic']}, "
            f"predicted {predicted.non_hyperelliptic_total}"
        )
    if predicted.by_index is not None:
        expected = {str(k): v for k, v in sorted(predicted.by_index.items()) if v}
        if computed.get("by_index", {}) != expected:
            details.append(f"indices: computed {computed.get('by_index')}, predicted {expected}")
    if predicted.by_spin is not None:
        expected = {str(k): v for k, v in sorted(predicted.by_spin.items()) if v}
        if computed.get("by_spin", {}) != expected:
            details.append(f"spin parities: computed {computed.get('by_spin')}, predicted {expected}")
    return details


def _engine_settings(sig: Signature) -> dict[str, Any]:
    """Family options the plugin of sig ran with."""
    settings = family_options(DEFAULT_SETTINGS)
    settings.update(family_plugin(sig).options)
    return settings


def _closure(net: EquatorialNet) -> dict[str, Any]:
    closure: dict[str, Any] = {"closed": True}
    if classify_one_dim(net.signature) == Family.B:
        closure["empty_top_type_one"] = sum(
            1 for b in net.vertices if b.family == "B-I" and b.l1 == 0
        )
    return closure


def verify_stratum(sig: Signature, check_involution: bool = True) -> VerdictRecord:
    """
    Build the net of sig and compare its components with the prediction.

    A net that does not close under U is reported as a mismatch together
    with the family options in force.

    Raises:
        UnsupportedFamily: outside the B, C and D families
        AtlasError: other engine failures propagate
    """
    family = classify_one_dim(sig)
    if family not in VERIFIED_FAMILIES:
        raise UnsupportedFamily(f"{sig.render()} is {family.value}; nothing to verify")
    predicted = predicted_components(sig)
    settings = _engine_settings(sig)
    try:
        net = build_net(sig, check_involution=check_involution)
    except ClosureError as e:
        log.warning("%s: the net does not close: %s", sig.render(), e)
        return VerdictRecord(
            signature=sig.render(),
            family=family.value,
            verdict="mismatch",
            computed={"settings": settings, "closure": {"closed": False, "reason": str(e)}},
            predicted=predicted.to_dict(),
            details=[f"the net does not close: {e}"],
            flags=list(predicted.flags),
        )
    reports = all_component_invariants(net)
    computed = computed_breakdown(net, reports)
    computed["settings"] = settings
    computed["closure"] = _closure(net)
    details = compare(predicted, computed, reports)
    record = VerdictRecord(
        signature=sig.render(),
        family=family.value,
        verdict="mismatch" if details else "match",
        computed=computed,
        predicted=predicted.to_dict(),
        details=details,
        flags=list(predicted.flags),
    )
    log.info("%s: %s (%d components)", record.signature, record.verdict, computed["components"])
    return record


def probe_stratum(sig: Signature, check_involution: bool = True) -> VerdictRecord:
    """
    Component count of an A stratum.

    More than one component is flagged, except with a marked point where
    any count other than the number of cycle surfaces is flagged.
    """
    family = classify_one_dim(sig)
    if family != Family.A:
        raise UnsupportedFamily(f"{sig.render()} is {family.value}, not an A signature")
    net = build_net(sig, check_involution=check_involution)
    flags = []
    predicted: dict[str, Any] = {}
    if 0 in sig.zeros:
        expected = family_plugin(sig).predicted_components(sig)
        predicted = expected.to_dict()
        if len(net.components) != expected.total:
            flags.append(f"marked point: {len(net.components)} components, expected {expected.total}")
    elif len(net.components) > 1:
        flags.append("counterexample candidate: more than one component")
    return VerdictRecord(
        signature=sig.render(),
        family=family.value,
        verdict="probe",
        computed={
            "vertices": len(net.vertices),
            "arcs": len(net.pairing) // 2,
            "components": len(net.components),
            "settings": _engine_settings(sig),
            "closure": _closure(net),
        },
        predicted=predicted,
        flags=flags,
    )


def _run(text: str, settings: dict[str, Any], probe: bool) -> VerdictRecord:
    sig = parse_signature(text)
    configure_engine(settings)
    check = bool(settings.get("check_involution", True))
    return probe_stratum(sig, check) if probe else verify_stratum(sig, check)


def verify_signature_text(text: str, settings: Optional[dict[str, Any]] = None) -> VerdictRecord:
    """Process-pool entry point: verify one stratum given as text."""
    return _run(text, settings or DEFAULT_SETTINGS, probe=False)


def probe_signature_text(text: str, settings: Optional[dict[str, Any]] = None) -> VerdictRecord:
    """Process-pool entry point: probe one A stratum given as text."""
    return _run(text, settings or DEFAULT_SETTINGS, probe=True)


# ==================== Family signatures ====================

def _multisets(budget: int, minimum: int, start: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples of integers >= minimum with sum <= budget, the empty one included."""
    lo = minimum if start is None else start
    yield ()
    for x in range(lo, budget + 1):
        for rest in _multisets(budget - x, minimum, x):
            yield (x,) + rest


def _pairs(budget: int) -> Iterator[tuple[int, int]]:
    for e1 in range(1, budget + 1):
        for e2 in range(e1, budget - e1 + 1):
            yield (e1, e2)


def _build(zeros: tuple[int, ...], residueless: tuple[int, ...], groups: list[tuple[int, ...]]) -> Signature:
    poles = list(residueless)
    blocks: list[tuple[int, ...]] = [(j,) for j in range(len(residueless))]
    for group in groups:
        blocks.append(tuple(range(len(poles), len(poles) + len(group))))
        poles.extend(group)
    sig = Signature(zeros=tuple(zeros), poles=tuple(poles), blocks=tuple(blocks))
    validate_signature(sig)
    return sig


def family_signatures(family: Family, max_pole_sum: int) -> list[Signature]:
    """
    Every stratum of a family with total pole order at most max_pole_sum.

    Zero orders are non-negative; at most one zero has order zero, marking a
    regular point. Pole orders are sorted within each role
    (residueless poles, each pair or triple, and the two pairs of a D
    signature), and the zeros of B and A signatures are sorted.
    """
    result: list[Signature] = []
    if max_pole_sum < 1:
        return result
    for residueless in _multisets(max_pole_sum, 2):
        rest = max_pole_sum - sum(residueless)
        if family == Family.B:
            for pair in _pairs(rest):
                total = sum(residueless) + sum(pair)
                for a1 in range(0, (total - 2) // 2 + 1):
                    if total - 2 - a1 == 0:
                        continue
                    result.append(_build((a1, total - 2 - a1), residueless, [pair]))
        elif family == Family.C:
            for triple in _multisets(rest, 1):
                if len(triple) != 3:
                    continue
                a = sum(residueless) + sum(triple) - 2
                if a >= 1:
                    result.append(_build((a,), residueless, [triple]))
        elif family == Family.D:
            for first in _pairs(rest):
                for second in _pairs(rest - sum(first)):
                    if second < first:
                        continue
                    a = sum(residueless) + sum(first) + sum(second) - 2
                    if a >= 1:
                        result.append(_build((a,), residueless, [first, second]))
        elif family == Family.A:
            if not residueless:
                continue
            total = sum(residueless) - 2
            for a1 in range(0, total + 1):
                for a2 in range(max(a1, 1), total - a1 + 1):
                    a3 = total - a1 - a2
                    if a3 >= a2:
                        result.append(_build((a1, a2, a3), residueless, []))
        else:
            raise UnsupportedFamily(f"no sweep for family {family.value}")
    result = [s for s in result if classify_one_dim(s) == family]
    return sorted(set(result), key=_signature_order)


def _signature_order(sig: Signature) -> tuple:
    return (sum(sig.poles), sig.render())


# ==================== Reports ====================

@dataclass
class SweepReport:
    """Verdicts of one sweep, ordered by signature."""
    family: str
    max_pole_sum: int
    records: list[VerdictRecord] = field(default_factory=list)

    @property
    def mismatches(self) -> list[VerdictRecord]:
        return [r for r in self.records if r.verdict in ("mismatch", "error")]

    @property
    def flagged(self) -> list[VerdictRecord]:
        return [r for r in self.records if r.verdict == "probe" and r.flags]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.flagged

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "bounds": {"max_pole_sum": self.max_pole_sum},
            "strata": [r.to_dict() for r in self.records],
        }


def sweep(
    family: Family,
    max_pole_sum: int,
    jobs: int = 1,
    settings: Optional[dict[str, Any]] = None,
    on_progress: Optional[Callable[[SweepProgress], None]] = None,
) -> SweepReport:
    """Verify every stratum of a family up to the pole bound."""
    from .task_manager import run_sweep

    if family not in VERIFIED_FAMILIES:
        raise UnsupportedFamily(f"family {family.value} has no classification to verify")
    return run_sweep(family, max_pole_sum, jobs, settings, probe=False, on_progress=on_progress)


def probe_conjecture(
    max_pole_sum: int,
    jobs: int = 1,
    settings: Optional[dict[str, Any]] = None,
    on_progress: Optional[Callable[[SweepProgress], None]] = None,
) -> SweepReport:
    """Component counts of every A stratum up to the pole bound (experimental)."""
    from .task_manager import run_sweep

    return run_sweep(Family.A, max_pole_sum, jobs, settings, probe=True, on_progress=on_progress)
