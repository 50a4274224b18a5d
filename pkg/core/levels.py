"""
Two-level structures: the bottom and top ribbon graphs of a boundary point.

Nodes appear twice: as a face of the bottom level (the pole s-bottom, of
order kappa + 1) and as a vertex of the top level (the zero s-top, of order
kappa - 1). While a structure is being assembled its nodes carry
placeholder names starting with "#"; assemble_levels renames them after the
marked points of the components they join.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .models import ValidationError
from .ribbon import CanonicalLevel, RibbonGraph, canonical_level, disjoint_union, relabel
from .signature import Signature, label_key, pole_label, zero_label


def is_placeholder(name: str) -> bool:
    return name.startswith("#")


def placeholder(i: int) -> str:
    return f"#{i}"


def node_key(name: str) -> tuple:
    top, bottom = name[2:].split("/")
    return (label_key(top), label_key(bottom))


@dataclass(frozen=True)
class Ray:
    """A horizontal ray inside a node face: corner, position and global index."""
    corner: int
    position: int
    index: int


def _marked_labels(graph: RibbonGraph, comp: Sequence[int]) -> list[str]:
    labels = set()
    for h in comp:
        labels.add(graph.vertex[h])
        labels.add(graph.face[h])
    return sorted((x for x in labels if not is_placeholder(x)), key=label_key)


class LevelStructure:
    """
    Bottom and top levels of a boundary point, with named nodes.

    Slots at a top node are numbered counter-clockwise by cumulative angle
    from the lowest canonically numbered half-edge; rays in a bottom node
    face are numbered along the face from its lowest canonically numbered
    corner. A prong label compares the two references.
    """

    def __init__(self, bottom: RibbonGraph, top: RibbonGraph, kappa: dict[str, int]):
        self.bottom = bottom
        self.top = top
        self.kappa = dict(kappa)
        self.nodes: tuple[str, ...] = tuple(sorted(self.kappa, key=node_key))

    def __repr__(self) -> str:
        return f"LevelStructure(nodes={self.nodes}, kappa={self.kappa_tuple})"

    @property
    def kappa_tuple(self) -> tuple[int, ...]:
        return tuple(self.kappa[s] for s in self.nodes)

    # ==================== Canonical form ====================

    @cached_property
    def bottom_canon(self) -> CanonicalLevel:
        return canonical_level(self.bottom)

    @cached_property
    def top_canon(self) -> CanonicalLevel:
        return canonical_level(self.top)

    @cached_property
    def code(self) -> tuple:
        return (self.bottom_canon.code, self.top_canon.code)

    def validate(self, sig: Signature) -> None:
        """Check both levels against the signature's orders and the node enhancements."""
        bottom_zeros = set(self.bottom.vertex)
        top_zeros = {v for v in self.top.vertex if v not in self.kappa}
        expected_zeros = {zero_label(i) for i in range(sig.m)}
        if bottom_zeros & top_zeros or (bottom_zeros | top_zeros) != expected_zeros:
            raise ValidationError("zeros are not split between the two levels")
        bottom_faces = {f for f in self.bottom.face if f not in self.kappa}
        top_faces = set(self.top.face)
        expected_poles = {pole_label(j) for j in range(sig.n)}
        if bottom_faces & top_faces or (bottom_faces | top_faces) != expected_poles:
            raise ValidationError("poles are not split between the two levels")
        for s, k in self.kappa.items():
            if k < 1:
                raise ValidationError(f"node {s} has enhancement {k}")

        zero_order = {zero_label(i): a for i, a in enumerate(sig.zeros)}
        pole_order = {pole_label(j): b for j, b in enumerate(sig.poles)}
        self.bottom.validate(
            {v: zero_order[v] for v in bottom_zeros},
            {**{f: pole_order[f] for f in bottom_faces}, **{s: k + 1 for s, k in self.kappa.items()}},
        )
        self.top.validate(
            {**{v: zero_order[v] for v in top_zeros}, **{s: k - 1 for s, k in self.kappa.items()}},
            {f: pole_order[f] for f in top_faces},
        )

    # ==================== Prong references ====================

    def slots(self, node: str) -> list[tuple[int, int]]:
        """(half-edge, slot index) at a top node, counter-clockwise from the reference slot."""
        number = self.top_canon.number
        start = min(self.top.rotations[node], key=number.__getitem__)
        result = []
        g, offset = start, 0
        while True:
            result.append((g, offset))
            offset += self.top.angle[g]
            g = self.top.succ[g]
            if g == start:
                break
        if offset != 2 * self.kappa[node]:
            raise ValidationError(f"node {node} has {offset} slots, expected {2 * self.kappa[node]}")
        return result

    def rays(self, node: str) -> list[Ray]:
        """Rays of a bottom node face, in face order from the reference corner."""
        number = self.bottom_canon.number
        cycle = self.bottom.faces[node]
        start = min(cycle, key=number.__getitem__)
        result: list[Ray] = []
        h = start
        while True:
            for p in range(1, self.bottom.angle[h]):
                result.append(Ray(corner=h, position=p, index=len(result)))
            h = self.bottom.phi(h)
            if h == start:
                break
        if len(result) != 2 * self.kappa[node]:
            raise ValidationError(f"node {node} has {len(result)} rays, expected {2 * self.kappa[node]}")
        return result

    def ray_direction(self, ray: Ray) -> bool:
        """Raw direction of a ray (True for right)."""
        return self.bottom.right[ray.corner] ^ (ray.position % 2 == 1)

    def reference_parity(self, node: str) -> int:
        """1 when the canonical directions of the reference slot and reference ray differ."""
        slot0 = self.slots(node)[0][0]
        ray0 = self.rays(node)[0]
        top_dir = self.top.right[slot0] ^ self.top_canon.flip
        bottom_dir = self.ray_direction(ray0) ^ self.bottom_canon.flip
        return int(top_dir != bottom_dir)

    def frame_offset(self, node: str) -> int:
        """
        Difference between prong labels read from the raw references and
        canonical labels at node.

        The raw references are the lowest raw half-edge at the top node and
        the first ray after the lowest raw corner of the node face, compared
        without the canonical direction flips.
        """
        start = min(self.top.rotations[node])
        slot_offset = next(sigma for g, sigma in self.slots(node) if g == start)
        rays = self.rays(node)
        by_corner = {(r.corner, r.position): r for r in rays}
        corner = min(self.bottom.faces[node])
        h = corner
        while self.bottom.angle[h] < 2:
            h = self.bottom.phi(h)
        raw_ray = by_corner[(h, 1)]
        raw_parity = int(self.top.right[start] != self.ray_direction(raw_ray))
        return self.reference_parity(node) - raw_parity + slot_offset - raw_ray.index


def assemble_levels(
    bottom_parts: Sequence[RibbonGraph],
    top_parts: Sequence[RibbonGraph],
    kappa: dict[str, int],
) -> LevelStructure:
    """
    Join level components and name their nodes.

    Args:
        bottom_parts: bottom components; node faces carry placeholder labels
        top_parts: top components; node vertices carry placeholder labels
        kappa: enhancement per placeholder

    Returns:
        The LevelStructure with nodes named "s:<top label>/<bottom label>"
    """
    bottom = disjoint_union(bottom_parts) if len(bottom_parts) != 1 else bottom_parts[0]
    top = disjoint_union(top_parts) if len(top_parts) != 1 else top_parts[0]

    names: dict[str, str] = {}
    for temp in kappa:
        top_comp = next((c for c in top.components if any(top.vertex[h] == temp for h in c)), None)
        bottom_comp = next((c for c in bottom.components if any(bottom.face[h] == temp for h in c)), None)
        if top_comp is None or bottom_comp is None:
            raise ValidationError(f"node {temp} is missing from one of the levels")
        top_marked = _marked_labels(top, top_comp)
        bottom_marked = _marked_labels(bottom, bottom_comp)
        if not top_marked or not bottom_marked:
            raise ValidationError(f"node {temp} joins an unmarked component")
        names[temp] = f"s:{top_marked[0]}/{bottom_marked[0]}"
    if len(set(names.values())) != len(names):
        raise ValidationError("two nodes join the same pair of components")

    return LevelStructure(
        bottom=relabel(bottom, {}, names),
        top=relabel(top, names, {}),
        kappa={names[t]: k for t, k in kappa.items()},
    )
