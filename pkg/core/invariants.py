"""
Hyperellipticity, index and spin parity at boundary points, and their
aggregation over the components of an equatorial net.

Every invariant is read off the plumbed surface of the first half-arc of a
boundary point. All surfaces on an arc lie in one component, so the value
is the component's.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional
from collections import deque
import logging

from .boundary import BoundaryPoint, half_arcs
from .models import ComponentReport, Family, InconsistencyError, Undefined
from .net import ArcDiagram, EquatorialNet, plumb
from .ribbon import RibbonGraph, edge_of, twin
from .signature import (
    RamificationProfile,
    Signature,
    classify_one_dim,
    pole_label,
    profile_conditions_hold,
    zero_label,
    zeros_admit_involution,
)

log = logging.getLogger(__name__)

# Where the two cross curves meet an edge, measured from its even half-edge.
PORT_FIRST = Fraction(1, 3)
PORT_SECOND = Fraction(2, 3)


def reference_diagram(b: BoundaryPoint) -> ArcDiagram:
    return plumb(b, half_arcs(b)[0])


# ==================== Involutions ====================

def _rotation_map(graph: RibbonGraph, target: int) -> Optional[list[int]]:
    """The succ- and twin-compatible map sending half-edge 0 to target, if any."""
    image: list[Optional[int]] = [None] * graph.size
    image[0] = target
    queue = deque([0])
    while queue:
        h = queue.popleft()
        x = image[h]
        assert x is not None
        if graph.angle[h] != graph.angle[x] or graph.right[h] == graph.right[x]:
            return None
        for g, y in ((graph.succ[h], graph.succ[x]), (twin(h), twin(x))):
            if image[g] is None:
                image[g] = y
                queue.append(g)
            elif image[g] != y:
                return None
    if any(x is None for x in image):
        return None
    result = [x for x in image if x is not None]
    if len(set(result)) != graph.size:
        return None
    return result


def _profile_of(dia: ArcDiagram, iota: list[int]) -> Optional[RamificationProfile]:
    graph = dia.graph
    sig = dia.signature
    if any(iota[iota[h]] != h for h in range(graph.size)):
        return None

    zeros: dict[str, str] = {}
    faces: dict[str, str] = {}
    for h in range(graph.size):
        if zeros.setdefault(graph.vertex[h], graph.vertex[iota[h]]) != graph.vertex[iota[h]]:
            return None
        if faces.setdefault(graph.face[h], graph.face[iota[h]]) != graph.face[iota[h]]:
            return None
    if sig.m == 1:
        if zeros[zero_label(0)] != zero_label(0):
            return None
    elif zeros[zero_label(0)] != zero_label(1):
        return None

    for v in dia.cone.basis:
        if any(v[e] != v[edge_of(iota[2 * e])] for e in range(graph.edge_count)):
            return None

    index = {pole_label(j): j for j in range(sig.n)}
    involution = tuple(index[faces[pole_label(j)]] for j in range(sig.n))
    if not profile_conditions_hold(sig, involution):
        return None
    return RamificationProfile(involution)


def diagram_involution(dia: ArcDiagram) -> Optional[RamificationProfile]:
    """
    Profile of a direction-reversing symmetry of the whole arc, if one exists.

    The symmetry must commute with the ribbon structure, square to the
    identity, fix or swap the zeros, and keep every admissible length vector.
    """
    if not zeros_admit_involution(dia.signature):
        return None
    for target in range(dia.graph.size):
        iota = _rotation_map(dia.graph, target)
        if iota is None:
            continue
        profile = _profile_of(dia, iota)
        if profile is not None:
            return profile
    return None


@lru_cache(maxsize=16384)
def boundary_involution(b: BoundaryPoint) -> Optional[RamificationProfile]:
    """The ramification profile induced at b, or None if b is not hyperelliptic."""
    return diagram_involution(reference_diagram(b))


# ==================== Cross curves ====================

@dataclass(frozen=True)
class FaceVisit:
    """A curve inside one face: entry and exit corners (None at the end faces)."""
    face: str
    entry: Optional[int]
    exit: Optional[int]


def cross_curve(graph: RibbonGraph, start: str, end: str) -> list[FaceVisit]:
    """
    Shortest dual path from face start to face end.

    Leaving a face through corner h crosses the edge of succ(h); the next
    face is entered at corner pred(twin(succ(h))).
    """
    faces = graph.faces
    parent: dict[str, Optional[tuple[str, int]]] = {start: None}
    queue = deque([start])
    while queue and end not in parent:
        label = queue.popleft()
        for h in faces[label]:
            other = graph.face[graph.succ[h]]
            if other not in parent:
                parent[other] = (label, h)
                queue.append(other)
    if end not in parent:
        raise InconsistencyError(f"faces {start} and {end} are not connected")

    steps: list[tuple[str, int]] = []
    label = end
    while parent[label] is not None:
        prev, h = parent[label]  # type: ignore[misc]
        steps.append((prev, h))
        label = prev
    steps.reverse()

    visits: list[FaceVisit] = []
    entry: Optional[int] = None
    for label, h in steps:
        visits.append(FaceVisit(label, entry, h))
        entry = graph.pred[twin(graph.succ[h])]
    visits.append(FaceVisit(end, entry, None))
    return visits


def turning(graph: RibbonGraph, visits: list[FaceVisit]) -> int:
    """Total turning of a cross curve in half-turns."""
    total = 0
    for visit in visits:
        if visit.entry is None or visit.exit is None:
            continue
        total += 1
        c = visit.entry
        while True:
            c = graph.phi(c)
            total += graph.angle[c] - 1
            if c == visit.exit:
                break
    return total


def curve_index(graph: RibbonGraph, start: str, end: str) -> int:
    """Index of the closed curve through the simple-pole cylinder joining start and end."""
    half_turns = turning(graph, cross_curve(graph, start, end))
    if half_turns % 2:
        raise InconsistencyError(f"curve from {start} to {end} turns by an odd multiple of pi")
    return half_turns // 2


def _port(graph: RibbonGraph, position: dict[int, int], corner: int, t: Fraction) -> tuple[int, Fraction]:
    s = graph.succ[corner]
    return (position[corner], t if s % 2 == 0 else 1 - t)


def _between(x: tuple[int, Fraction], p: tuple[int, Fraction], y: tuple[int, Fraction], k: int) -> bool:
    """True if p lies strictly inside the boundary interval from x to y in face order."""
    def key(q: tuple[int, Fraction]) -> tuple[int, Fraction]:
        r = (q[0] - x[0]) % k
        if r == 0 and q[1] < x[1]:
            r = k
        return (r, q[1])

    return key(x) < key(p) < key(y)


def crossing_parity(graph: RibbonGraph, first: list[FaceVisit], second: list[FaceVisit]) -> int:
    """Number of crossings of two cross curves, mod 2."""
    by_face = {v.face: v for v in second}
    parity = 0
    for a in first:
        b = by_face.get(a.face)
        if b is None:
            continue
        cycle = graph.faces[a.face]
        position = {c: i for i, c in enumerate(cycle)}
        k = len(cycle)

        def ports(v: FaceVisit, t: Fraction) -> list[tuple[int, Fraction]]:
            return [_port(graph, position, c, t) for c in (v.entry, v.exit) if c is not None]

        pa, pb = ports(a, PORT_FIRST), ports(b, PORT_SECOND)
        if len(pa) == 2 and len(pb) == 2:
            parity += sum(_between(pa[0], p, pa[1], k) for p in pb)
        elif len(pa) == 2:
            parity += _between(pa[0], pb[0], pa[1], k)
        elif len(pb) == 2:
            parity += _between(pb[0], pa[0], pb[1], k)
        else:
            raise InconsistencyError(f"both cross curves end in {a.face}")
    return parity % 2


# ==================== Index ====================

def _simple_pairs(sig: Signature) -> list[tuple[int, int]]:
    return [
        (block[0], block[1]) for block in sig.multi_blocks
        if len(block) == 2 and sig.poles[block[0]] == sig.poles[block[1]] == 1
    ]


def index_data(sig: Signature) -> Optional[tuple[tuple[int, int], int]]:
    """
    The simple pair and modulus of the index, where the index is defined.

    B signatures need their pair to be simple; D signatures need exactly
    one simple pair. The modulus is the gcd of the zero orders and every
    pole order outside the simple pair.
    """
    family = classify_one_dim(sig)
    pairs = _simple_pairs(sig)
    if family == Family.B and len(pairs) == 1:
        pair = pairs[0]
    elif family == Family.D and len(pairs) == 1:
        pair = pairs[0]
    else:
        return None
    orders = list(sig.zeros) + [b for j, b in enumerate(sig.poles) if j not in pair]
    return pair, gcd(*orders)


def diagram_index(dia: ArcDiagram, pair: tuple[int, int], modulus: int) -> int:
    """Index of the simple-pair cross curve, normalized into [1, modulus]."""
    value = -curve_index(dia.graph, pole_label(pair[0]), pole_label(pair[1])) % modulus
    return value or modulus


def _index(b: BoundaryPoint, family: Family) -> tuple[int, int]:
    sig = b.signature
    data = index_data(sig)
    if data is None or classify_one_dim(sig) != family:
        raise Undefined(f"no index on {sig.render()} as a {family.value} signature")
    pair, modulus = data
    return diagram_index(reference_diagram(b), pair, modulus), modulus


@lru_cache(maxsize=16384)
def index_B(b: BoundaryPoint) -> tuple[int, int]:
    """
    Index class (value, modulus) at a B boundary point.

    Raises:
        Undefined: unless the pair of the signature consists of simple poles
    """
    return _index(b, Family.B)


@lru_cache(maxsize=16384)
def index_D(b: BoundaryPoint) -> tuple[int, int]:
    """
    Index class (value, modulus) at a D boundary point.

    Raises:
        Undefined: unless exactly one pair of the signature is simple
    """
    return _index(b, Family.D)


# ==================== Spin ====================

def spin_defined(sig: Signature) -> bool:
    """D signatures with two simple pairs and only even residueless poles."""
    return (
        classify_one_dim(sig) == Family.D
        and len(_simple_pairs(sig)) == 2
        and all(sig.poles[j] % 2 == 0 for j in sig.residueless)
    )


def diagram_spin(dia: ArcDiagram) -> int:
    """
    Spin parity from the two cross curves and the cores of the two cylinders.

    The cores have index zero, so the parity is the sum of the two cross
    curve indices and their intersection number.
    """
    graph = dia.graph
    (p1, p2), (p3, p4) = _simple_pairs(dia.signature)
    first = cross_curve(graph, pole_label(p1), pole_label(p2))
    second = cross_curve(graph, pole_label(p3), pole_label(p4))
    ind1 = turning(graph, first)
    ind2 = turning(graph, second)
    if ind1 % 2 or ind2 % 2:
        raise InconsistencyError("a cross curve turns by an odd multiple of pi")
    return (ind1 // 2 + ind2 // 2 + crossing_parity(graph, first, second)) % 2


@lru_cache(maxsize=16384)
def spin_D(b: BoundaryPoint) -> int:
    """
    Spin parity at a D boundary point.

    Raises:
        Undefined: unless both pairs are simple and residueless poles are even
    """
    if not spin_defined(b.signature):
        raise Undefined(f"no spin parity on {b.signature.render()}")
    return diagram_spin(reference_diagram(b))


# ==================== Components ====================

def component_invariants(net: EquatorialNet, component: int) -> ComponentReport:
    """
    Invariants of one component of the net, checked for constancy.

    Raises:
        InconsistencyError: if two vertices of the component disagree
    """
    sig = net.signature
    vertices = net.components[component]
    points = [net.vertices[v] for v in vertices]
    report = ComponentReport(id=component, vertices=list(vertices))

    profiles = {boundary_involution(b) for b in points}
    if len(profiles) != 1:
        shown = sorted(str(p) for p in profiles)
        raise InconsistencyError(f"component {component} of {sig.render()} mixes profiles {shown}")
    profile = profiles.pop()
    report.hyperelliptic = profile is not None
    report.profile = profile

    data = index_data(sig)
    if data is not None:
        index_of = index_B if classify_one_dim(sig) == Family.B else index_D
        indices = {index_of(b) for b in points}
        if len(indices) != 1:
            raise InconsistencyError(
                f"component {component} of {sig.render()} mixes indices {sorted(indices)}"
            )
        report.index = indices.pop()

    if spin_defined(sig):
        spins = {spin_D(b) for b in points}
        if len(spins) != 1:
            raise InconsistencyError(f"component {component} of {sig.render()} mixes spin parities")
        report.spin = spins.pop()

    log.debug(
        "%s component %d: %d vertices, hyperelliptic=%s index=%s spin=%s",
        sig.render(), component, len(vertices), report.hyperelliptic, report.index, report.spin,
    )
    return report


def all_component_invariants(net: EquatorialNet) -> list[ComponentReport]:
    return [component_invariants(net, i) for i in range(len(net.components))]


def clear_caches() -> None:
    boundary_involution.cache_clear()
    index_B.cache_clear()
    index_D.cache_clear()
    spin_D.cache_clear()
