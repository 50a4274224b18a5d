"""
Plumbing and contraction of arc diagrams, the moves R and U on half-arcs,
and the equatorial net of a stratum.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Optional
import json
import logging

import sympy
from networkx.utils import UnionFind

from .boundary import (
    BoundaryPoint,
    HalfArc,
    boundary_index,
    check_half_arc,
    enumerate_boundaries,
    half_arcs,
    realize,
)
from .levels import assemble_levels, placeholder
from .models import ClosureError, DegenerateDiagram, InvalidHalfArc, ValidationError
from .ribbon import RibbonGraph, edge_of
from .signature import Signature, pole_label, zero_label

log = logging.getLogger(__name__)

SHORT = "short"
LONG = "long"
BLENDED = "blended"


# ==================== Cone of edge lengths ====================

@dataclass(frozen=True)
class Cone:
    """
    Edge lengths on an open equatorial arc.

    basis spans the lengths allowed by the residue conditions; each edge
    length is a linear functional on it. The two extreme rays of the
    positive cone are the two ends of the arc.
    """
    basis: tuple[tuple[Fraction, ...], ...]
    functionals: tuple[tuple[Fraction, Fraction], ...]
    extremes: tuple[frozenset[int], frozenset[int]]


def _dot(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> Fraction:
    return a[0] * b[0] + a[1] * b[1]


def _cross(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def residue_blocks(sig: Signature) -> list[list[str]]:
    return [[pole_label(j) for j in block] for block in sig.blocks]


def compute_cone(sig: Signature, graph: RibbonGraph) -> Cone:
    """
    Solve the residue conditions exactly and locate the ends of the arc.

    Raises:
        DegenerateDiagram: unless the lengths form a two-dimensional open cone
    """
    rows = graph.residue_rows(residue_blocks(sig))
    edges = graph.edge_count
    if rows:
        null = sympy.Matrix(rows).nullspace()
        basis = tuple(tuple(Fraction(int(x.p), int(x.q)) for x in v) for v in null)
    else:
        basis = tuple(
            tuple(Fraction(int(i == j)) for j in range(edges)) for i in range(edges)
        )
    if len(basis) != 2:
        raise DegenerateDiagram(f"lengths span dimension {len(basis)}, expected 2")

    functionals = tuple((basis[0][e], basis[1][e]) for e in range(edges))
    if any(f == (0, 0) for f in functionals):
        raise DegenerateDiagram("an edge length vanishes identically")

    rays: list[tuple[Fraction, Fraction]] = []
    for f in functionals:
        for r in ((-f[1], f[0]), (f[1], -f[0])):
            if all(_dot(g, r) >= 0 for g in functionals):
                if not any(_cross(r, s) == 0 and _dot(r, s) > 0 for s in rays):
                    rays.append(r)
    if len(rays) != 2 or _cross(rays[0], rays[1]) == 0:
        raise DegenerateDiagram(f"the cone of lengths has {len(rays)} extreme rays")
    middle = (rays[0][0] + rays[1][0], rays[0][1] + rays[1][1])
    if not all(_dot(f, middle) > 0 for f in functionals):
        raise DegenerateDiagram("no positive lengths satisfy the residue conditions")

    vanishing = tuple(
        frozenset(e for e, f in enumerate(functionals) if _dot(f, r) == 0) for r in rays
    )
    return Cone(basis=basis, functionals=functionals, extremes=(vanishing[0], vanishing[1]))


# ==================== Arc diagrams ====================

@dataclass(eq=False)
class ArcDiagram:
    """
    The plumbed surface on an open equatorial arc.

    Edges are tagged short (vanishing at the source end), long (vanishing
    at the far end) or blended (vanishing at neither end).
    """
    signature: Signature
    graph: RibbonGraph
    edge_class: tuple[str, ...]
    cone: Cone
    source: Optional[HalfArc] = field(default=None)

    def edges_of(self, cls: str) -> frozenset[int]:
        return frozenset(e for e, c in enumerate(self.edge_class) if c == cls)

    @cached_property
    def zero_orders(self) -> dict[str, int]:
        return {zero_label(i): a for i, a in enumerate(self.signature.zeros)}


def _expected_orders(sig: Signature) -> tuple[dict[str, int], dict[str, int]]:
    return (
        {zero_label(i): a for i, a in enumerate(sig.zeros)},
        {pole_label(j): b for j, b in enumerate(sig.poles)},
    )


def _node_labels(b: BoundaryPoint, label: tuple[int, ...], nodes: tuple[str, ...]) -> dict[str, int]:
    if len(nodes) == 1:
        return {nodes[0]: label[0]}
    k2 = b.kappa[1]
    return {nodes[0]: label[0], nodes[1]: (-label[1]) % (2 * k2)}


@lru_cache(maxsize=16384)
def plumb(b: BoundaryPoint, h: HalfArc) -> ArcDiagram:
    """
    Glue the top level of b into its bottom node faces as prescribed by h.

    Raises:
        InvalidHalfArc: if h is not in the star of b
    """
    if h.boundary != b:
        raise InvalidHalfArc(f"half-arc belongs to {h.boundary.describe()}, not {b.describe()}")
    check_half_arc(h)
    sig = b.signature
    levels = realize(b)
    bottom, top = levels.bottom, levels.top
    flip_b, flip_t = levels.bottom_canon.flip, levels.top_canon.flip
    eps = h.epsilon
    offset = bottom.size
    size = bottom.size + top.size

    vertex = [""] * size
    succ = [0] * size
    angle = [0] * size
    right = [False] * size
    face = [""] * size

    insertions: dict[int, list[tuple[int, int]]] = {}
    for node, L in _node_labels(b, h.label, levels.nodes).items():
        k = (L + levels.reference_parity(node)) % (2 * levels.kappa[node])
        rays = levels.rays(node)
        for g, sigma in levels.slots(node):
            ray = rays[(k + sigma) % len(rays)]
            ray_dir = levels.ray_direction(ray) ^ flip_b ^ bool(eps)
            if ray_dir != (top.right[g] ^ flip_t):
                raise InvalidHalfArc(f"slot {sigma} of {node} meets a ray pointing the other way")
            insertions.setdefault(ray.corner, []).append((ray.position, g))

    for h_b in range(bottom.size):
        vertex[h_b] = bottom.vertex[h_b]
        right[h_b] = bottom.right[h_b] ^ flip_b ^ bool(eps)
        face[h_b] = bottom.face[h_b]
        chain = [h_b] + [offset + g for _, g in sorted(insertions.get(h_b, []))]
        positions = [0] + [p for p, _ in sorted(insertions.get(h_b, []))] + [bottom.angle[h_b]]
        for i, x in enumerate(chain):
            succ[x] = chain[i + 1] if i + 1 < len(chain) else bottom.succ[h_b]
            angle[x] = positions[i + 1] - positions[i]
            vertex[x] = bottom.vertex[h_b]

    for g in range(top.size):
        x = offset + g
        right[x] = top.right[g] ^ flip_t
        face[x] = top.face[g]
        if top.vertex[g] not in levels.kappa:
            vertex[x] = top.vertex[g]
            succ[x] = offset + top.succ[g]
            angle[x] = top.angle[g]

    draft = RibbonGraph(vertex, succ, angle, right, face)
    for cycle in draft.face_cycles:
        marked = {face[c] for c in cycle if face[c] not in levels.kappa}
        if len(marked) != 1:
            raise DegenerateDiagram(f"a face of the plumbed surface carries {sorted(marked)}")
        label = marked.pop()
        for c in cycle:
            face[c] = label
    graph = RibbonGraph(vertex, succ, angle, right, face)
    try:
        graph.validate(*_expected_orders(sig))
    except ValidationError as e:
        raise DegenerateDiagram(f"plumbing {b.describe()} at {h.label}: {e}") from e

    cone = compute_cone(sig, graph)
    short = frozenset(range(bottom.edge_count))
    if cone.extremes[0] == short:
        far = cone.extremes[1]
    elif cone.extremes[1] == short:
        far = cone.extremes[0]
    else:
        raise DegenerateDiagram(f"the bottom level of {b.describe()} is not an end of its arc")
    classes = tuple(
        SHORT if e in short else (LONG if e in far else BLENDED)
        for e in range(graph.edge_count)
    )
    return ArcDiagram(signature=sig, graph=graph, edge_class=classes, cone=cone, source=h)


def contract(dia: ArcDiagram, cls: str) -> tuple[BoundaryPoint, HalfArc]:
    """
    Shrink the edges of one class and read off the boundary point and half-arc.

    Args:
        dia: A plumbed diagram
        cls: "short" for the source end of the arc, "long" for the far end

    Raises:
        DegenerateDiagram: if the shrinking edges do not form a principal boundary
        ClosureError: if the result is not an enumerated boundary point
    """
    if cls not in (SHORT, LONG):
        raise ValueError(f"unknown edge class {cls!r}")
    graph = dia.graph
    sig = dia.signature
    shrink = dia.edges_of(cls)
    if not shrink:
        raise DegenerateDiagram(f"no {cls} edges to contract")
    in_s = [edge_of(x) in shrink for x in range(graph.size)]

    # Walk each bottom corner across the half-edges that stay on top.
    succ_s: dict[int, int] = {}
    angle_s: dict[int, int] = {}
    passes: dict[int, list[tuple[int, int]]] = {}
    for x in range(graph.size):
        if not in_s[x]:
            continue
        acc = graph.angle[x]
        g = graph.succ[x]
        passed = []
        while not in_s[g]:
            passed.append((g, acc))
            acc += graph.angle[g]
            g = graph.succ[g]
        succ_s[x], angle_s[x], passes[x] = g, acc, passed

    bottom_edges = sorted(shrink)
    top_edges = sorted(set(range(graph.edge_count)) - shrink)
    b_id = {2 * e + s: 2 * i + s for i, e in enumerate(bottom_edges) for s in (0, 1)}
    t_id = {2 * e + s: 2 * i + s for i, e in enumerate(top_edges) for s in (0, 1)}

    b_size = 2 * len(bottom_edges)
    b_vertex, b_succ, b_angle = [""] * b_size, [0] * b_size, [0] * b_size
    b_right, b_face = [False] * b_size, [""] * b_size
    kappa: dict[str, int] = {}
    ray_index: dict[int, int] = {}
    node_of: dict[int, str] = {}
    position_of: dict[int, tuple[int, int]] = {}

    seen: set[int] = set()
    for start in sorted(succ_s):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        c = succ_s[start] ^ 1
        while c != start:
            cycle.append(c)
            seen.add(c)
            c = succ_s[c] ^ 1
        if not any(passes[c] for c in cycle):
            label = graph.face[start]
        else:
            label = placeholder(len(kappa))
            rays = sum(angle_s[c] - 1 for c in cycle)
            if rays % 2 or rays == 0:
                raise DegenerateDiagram(f"a node face has {rays} rays")
            kappa[label] = rays // 2
            offset = 0
            for c in cycle:
                for g, p in passes[c]:
                    ray_index[g] = offset + p - 1
                    node_of[g] = label
                    position_of[g] = (b_id[c], p)
                offset += angle_s[c] - 1
        for c in cycle:
            b_face[b_id[c]] = label

    for x, y in b_id.items():
        b_vertex[y] = graph.vertex[x]
        b_succ[y] = b_id[succ_s[x]]
        b_angle[y] = angle_s[x]
        b_right[y] = graph.right[x]

    t_size = 2 * len(top_edges)
    t_vertex, t_succ, t_angle = [""] * t_size, [0] * t_size, [0] * t_size
    t_right, t_face = [False] * t_size, [""] * t_size
    at_node: dict[str, list[int]] = {}
    for x, y in t_id.items():
        t_right[y] = graph.right[x]
        t_face[y] = graph.face[x]
        if x in node_of:
            t_vertex[y] = node_of[x]
            at_node.setdefault(node_of[x], []).append(x)
        else:
            t_vertex[y] = graph.vertex[x]
            t_succ[y] = t_id[graph.succ[x]]
            t_angle[y] = graph.angle[x]
    for label, members in at_node.items():
        members.sort(key=ray_index.__getitem__)
        total = 2 * kappa[label]
        for i, x in enumerate(members):
            nxt = members[(i + 1) % len(members)]
            t_succ[t_id[x]] = t_id[nxt]
            gap = (ray_index[nxt] - ray_index[x]) % total
            t_angle[t_id[x]] = gap or total

    try:
        levels = assemble_levels(
            [RibbonGraph(b_vertex, b_succ, b_angle, b_right, b_face)],
            [RibbonGraph(t_vertex, t_succ, t_angle, t_right, t_face)],
            kappa,
        )
        levels.validate(sig)
    except ValidationError as e:
        raise DegenerateDiagram(f"contracting the {cls} edges: {e}") from e

    eps = int(levels.top_canon.flip != levels.bottom_canon.flip)
    new_position = {t_id[x]: pos for x, pos in position_of.items()}
    labels: list[int] = []
    for node in levels.nodes:
        modulus = 2 * levels.kappa[node]
        index_of = {(r.corner, r.position): r.index for r in levels.rays(node)}
        shifts = {
            (index_of[new_position[g]] - sigma) % modulus
            for g, sigma in levels.slots(node)
        }
        if len(shifts) != 1:
            raise DegenerateDiagram(f"slots of {node} do not align with one rotation")
        L = (shifts.pop() - levels.reference_parity(node)) % modulus
        if L % 2 != eps:
            raise DegenerateDiagram(f"prong label {L} at {node} disagrees with the level flip")
        labels.append(L)

    w = None
    if len(labels) == 2:
        k1, k2 = levels.kappa_tuple
        w = ((labels[0] - labels[1]) // 2) % gcd(k1, k2)
        label = (labels[0], (-labels[1]) % (2 * k2))
    else:
        label = (labels[0],)
    b = boundary_index(sig).lookup((levels.code, w))
    return b, HalfArc(b, label)


# ==================== Moves ====================

def u_move(h: HalfArc) -> HalfArc:
    """The half-arc at the other end of the equatorial arc through h."""
    return contract(plumb(h.boundary, h), LONG)[1]


def r_move(h: HalfArc, k: int) -> HalfArc:
    """Rotate h by k half-steps within its star."""
    kappa = h.boundary.kappa
    if len(kappa) == 1:
        return HalfArc(h.boundary, ((h.label[0] + k) % (2 * kappa[0]),))
    return HalfArc(
        h.boundary,
        ((h.label[0] + k) % (2 * kappa[0]), (h.label[1] - k) % (2 * kappa[1])),
    )


# ==================== Equatorial net ====================

@dataclass
class EquatorialNet:
    """Boundary points of a stratum joined by the U pairing of their half-arcs."""
    signature: Signature
    vertices: list[BoundaryPoint]
    pairing: dict[HalfArc, HalfArc]
    components: list[list[int]]

    @cached_property
    def vertex_ids(self) -> dict[BoundaryPoint, int]:
        return {b: i for i, b in enumerate(self.vertices)}

    @property
    def arcs(self) -> list[tuple[HalfArc, HalfArc]]:
        result = []
        for a, b in self.pairing.items():
            if self._half_arc_key(a) < self._half_arc_key(b):
                result.append((a, b))
        return sorted(result, key=lambda ab: (self._half_arc_key(ab[0]), self._half_arc_key(ab[1])))

    def _half_arc_key(self, h: HalfArc) -> tuple:
        return (self.vertex_ids[h.boundary], h.label)

    def component_of(self, vertex_id: int) -> int:
        for i, comp in enumerate(self.components):
            if vertex_id in comp:
                return i
        raise KeyError(vertex_id)


def build_net(sig: Signature, check_involution: bool = True) -> EquatorialNet:
    """
    Pair every half-arc of every boundary point of sig with its U image.

    Raises:
        ClosureError: if U leaves the vertex set or fails to be an involution
    """
    vertices = enumerate_boundaries(sig)
    ids = {b: i for i, b in enumerate(vertices)}
    pairing: dict[HalfArc, HalfArc] = {}
    uf = UnionFind(range(len(vertices)))

    for b in vertices:
        for h in half_arcs(b):
            if h in pairing:
                continue
            t = u_move(h)
            if t == h:
                raise ClosureError(f"U fixes the half-arc {h.label} of {b.describe()}")
            if t.boundary not in ids:
                raise ClosureError(f"U of {b.describe()} left the vertex set")
            check_half_arc(t)
            if t in pairing:
                raise ClosureError(f"{t.boundary.describe()} at {t.label} is reached twice")
            if check_involution and u_move(t) != h:
                raise ClosureError(f"U is not an involution at {b.describe()} {h.label}")
            pairing[h] = t
            pairing[t] = h
            uf.union(ids[b], ids[t.boundary])

    components = sorted((sorted(c) for c in uf.to_sets()), key=lambda c: c[0])
    log.debug(
        "%s: %d vertices, %d arcs, %d components",
        sig.render(), len(vertices), len(pairing) // 2, len(components),
    )
    return EquatorialNet(signature=sig, vertices=vertices, pairing=pairing, components=components)


# ==================== Export ====================

COMPONENT_COLORS = (
    "lightblue", "lightsalmon", "palegreen", "khaki", "plum",
    "lightgray", "aquamarine", "pink", "wheat", "lavender",
)


def export_dot(net: EquatorialNet) -> str:
    """DOT text: one node per boundary point, one edge per arc, colored by component."""
    lines = ["graph net {", f"  // {net.signature.render()}", "  node [shape=box, style=filled];"]
    for i, b in enumerate(net.vertices):
        color = COMPONENT_COLORS[net.component_of(i) % len(COMPONENT_COLORS)]
        lines.append(f'  v{i} [label="{b.describe()}", fillcolor="{color}"];')
    for a, t in net.arcs:
        la = ",".join(str(x) for x in a.label)
        lt = ",".join(str(x) for x in t.label)
        lines.append(
            f'  v{net.vertex_ids[a.boundary]} -- v{net.vertex_ids[t.boundary]} [label="{la}|{lt}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def net_to_dict(net: EquatorialNet) -> dict:
    def half_arc(h: HalfArc) -> dict:
        return {"vertex": net.vertex_ids[h.boundary], "label": list(h.label)}

    return {
        "signature": net.signature.render(),
        "vertices": [
            {"id": i, "family": b.family, "data": b.to_dict()}
            for i, b in enumerate(net.vertices)
        ],
        "arcs": [[half_arc(a), half_arc(t)] for a, t in net.arcs],
        "components": [list(c) for c in net.components],
    }


def export_json(net: EquatorialNet, indent: int = 2) -> str:
    """JSON text following {signature, vertices, arcs, components}."""
    return json.dumps(net_to_dict(net), indent=indent) + "\n"
