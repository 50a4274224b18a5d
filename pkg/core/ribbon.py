"""
Decorated ribbon graphs of parallel saddle connections.

Half-edges are integers; the twin of h is h ^ 1 and h >> 1 is its edge.
Each half-edge carries the zero it starts at, its counter-clockwise
successor, the corner angle up to that successor (in units of pi), the
direction of its ray (right or left along the real axis) and the label of
the face the corner belongs to.
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from networkx.utils import UnionFind

from .models import ValidationError


def twin(h: int) -> int:
    return h ^ 1


def edge_of(h: int) -> int:
    return h >> 1


class RibbonGraph:
    """
    Ribbon graph with angle, direction and face decorations.

    Two consecutive rays at a zero point the same way iff the angle between
    them is an even multiple of pi.
    """

    def __init__(
        self,
        vertex: Sequence[str],
        succ: Sequence[int],
        angle: Sequence[int],
        right: Sequence[bool],
        face: Sequence[str],
    ):
        size = len(vertex)
        if size % 2 or not (len(succ) == len(angle) == len(right) == len(face) == size):
            raise ValidationError("ribbon graph arrays must have one even common length")
        self.vertex = tuple(vertex)
        self.succ = tuple(succ)
        self.angle = tuple(angle)
        self.right = tuple(bool(x) for x in right)
        self.face = tuple(face)

    def __repr__(self) -> str:
        return f"RibbonGraph(edges={self.edge_count}, zeros={self.vertex_names})"

    @property
    def size(self) -> int:
        return len(self.vertex)

    @property
    def edge_count(self) -> int:
        return len(self.vertex) // 2

    @cached_property
    def pred(self) -> tuple[int, ...]:
        pred = [0] * self.size
        for h, s in enumerate(self.succ):
            pred[s] = h
        return tuple(pred)

    @cached_property
    def vertex_names(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.vertex)))

    def phi(self, h: int) -> int:
        """Next corner along the face of corner h."""
        return twin(self.succ[h])

    # ==================== Cycles ====================

    @cached_property
    def rotations(self) -> dict[str, list[int]]:
        """Counter-clockwise half-edge cycle at each zero, starting from its smallest half-edge."""
        result: dict[str, list[int]] = {}
        seen: set[int] = set()
        for h in range(self.size):
            if h in seen:
                continue
            cycle = [h]
            seen.add(h)
            g = self.succ[h]
            while g != h:
                cycle.append(g)
                seen.add(g)
                g = self.succ[g]
            name = self.vertex[h]
            if name in result:
                raise ValidationError(f"zero {name} carries two rotation cycles")
            result[name] = cycle
        return result

    @cached_property
    def face_cycles(self) -> list[list[int]]:
        """Corner cycles of the faces, each starting from its smallest corner."""
        cycles: list[list[int]] = []
        seen: set[int] = set()
        for h in range(self.size):
            if h in seen:
                continue
            cycle = [h]
            seen.add(h)
            g = self.phi(h)
            while g != h:
                cycle.append(g)
                seen.add(g)
                g = self.phi(g)
            cycles.append(cycle)
        return cycles

    @cached_property
    def faces(self) -> dict[str, list[int]]:
        """Face label to corner cycle."""
        result: dict[str, list[int]] = {}
        for cycle in self.face_cycles:
            labels = {self.face[h] for h in cycle}
            if len(labels) != 1:
                raise ValidationError(f"face cycle carries labels {sorted(labels)}")
            label = labels.pop()
            if label in result:
                raise ValidationError(f"label {label} marks two faces")
            result[label] = cycle
        return result

    @cached_property
    def components(self) -> list[list[int]]:
        """Half-edge sets of connected components, ordered by smallest half-edge."""
        uf = UnionFind(range(self.size))
        for h in range(self.size):
            uf.union(h, self.succ[h])
            uf.union(h, twin(h))
        groups = [sorted(g) for g in uf.to_sets()]
        return sorted(groups, key=lambda g: g[0])

    # ==================== Validation ====================

    def validate(
        self,
        zero_orders: dict[str, int],
        face_orders: dict[str, int],
    ) -> None:
        """
        Check ribbon consistency against the expected orders.

        Args:
            zero_orders: order of every zero (vertex label)
            face_orders: order of every pole (face label)

        Raises:
            ValidationError: on the first violated condition
        """
        for h in range(self.size):
            if self.angle[h] < 1:
                raise ValidationError(f"corner {h} has non-positive angle")
            if self.right[self.succ[h]] != (self.right[h] ^ (self.angle[h] % 2 == 1)):
                raise ValidationError(f"corner {h} breaks the ray direction rule")
            if self.right[h] == self.right[twin(h)]:
                raise ValidationError(f"edge {edge_of(h)} has parallel end rays")
            if self.vertex[self.succ[h]] != self.vertex[h]:
                raise ValidationError(f"successor of {h} sits at another zero")

        rotations = self.rotations
        if set(rotations) != set(zero_orders):
            raise ValidationError(
                f"zeros {sorted(rotations)} differ from expected {sorted(zero_orders)}"
            )
        for name, cycle in rotations.items():
            total = sum(self.angle[h] for h in cycle)
            if total != 2 * (zero_orders[name] + 1):
                raise ValidationError(
                    f"angle {total} at {name} does not match order {zero_orders[name]}"
                )

        faces = self.faces
        if set(faces) != set(face_orders):
            raise ValidationError(
                f"faces {sorted(faces)} differ from expected {sorted(face_orders)}"
            )
        for label, cycle in faces.items():
            total = sum(self.angle[h] for h in cycle)
            if total != len(cycle) + 2 * face_orders[label] - 2:
                raise ValidationError(
                    f"angle {total} around {label} does not match order {face_orders[label]}"
                )

        for comp in self.components:
            comp_set = set(comp)
            vertices = {self.vertex[h] for h in comp}
            comp_faces = sum(1 for cycle in self.face_cycles if cycle[0] in comp_set)
            if len(vertices) - len(comp) // 2 + comp_faces != 2:
                raise ValidationError("a component of the ribbon graph is not planar")

    # ==================== Residues ====================

    def face_coefficients(self) -> dict[str, list[int]]:
        """Residue of each face as integer coefficients of the edge lengths."""
        result: dict[str, list[int]] = {}
        for label, cycle in self.faces.items():
            row = [0] * self.edge_count
            for h in cycle:
                s = self.succ[h]
                row[edge_of(s)] += 1 if self.right[s] else -1
            result[label] = row
        return result

    def residue_rows(self, blocks: Iterable[Iterable[str]]) -> list[list[int]]:
        """Sum of face residues over each block of face labels."""
        coeffs = self.face_coefficients()
        rows = []
        for block in blocks:
            row = [0] * self.edge_count
            for label in block:
                if label in coeffs:
                    row = [x + y for x, y in zip(row, coeffs[label])]
            if any(row):
                rows.append(row)
        return rows

    # ==================== Canonical form ====================

    def _bfs(self, root: int) -> list[int]:
        order = [root]
        num = {root: 0}
        i = 0
        while i < len(order):
            h = order[i]
            for g in (self.succ[h], twin(h)):
                if g not in num:
                    num[g] = len(order)
                    order.append(g)
            i += 1
        return order

    def _code(self, order: list[int], flip: bool) -> tuple:
        num = {h: i for i, h in enumerate(order)}
        return tuple(
            (
                self.vertex[h],
                self.face[h],
                self.angle[h],
                num[self.succ[h]],
                num[twin(h)],
                self.right[h] ^ flip,
            )
            for h in order
        )

    def component_canon(self, comp: list[int], flip: bool) -> tuple[tuple, list[int]]:
        """Minimal code of one component over all roots, with its numbering."""
        best: Optional[tuple[tuple, list[int]]] = None
        for root in comp:
            order = self._bfs(root)
            code = self._code(order, flip)
            if best is None or code < best[0]:
                best = (code, order)
        assert best is not None
        return best


@dataclass(frozen=True)
class CanonicalLevel:
    """Canonical code of a level, the numbering that realizes it and the chosen flip."""
    code: tuple
    order: tuple[int, ...]
    flip: bool

    @cached_property
    def number(self) -> dict[int, int]:
        return {h: i for i, h in enumerate(self.order)}


def canonical_level(graph: RibbonGraph) -> CanonicalLevel:
    """Canonical form of a possibly disconnected level, up to a global direction flip."""
    best: Optional[CanonicalLevel] = None
    for flip in (False, True):
        canons = sorted(graph.component_canon(comp, flip) for comp in graph.components)
        code = tuple(c for c, _ in canons)
        order = tuple(h for _, o in canons for h in o)
        if best is None or code < best.code:
            best = CanonicalLevel(code=code, order=order, flip=flip)
    assert best is not None
    return best


def disjoint_union(graphs: Sequence[RibbonGraph]) -> RibbonGraph:
    """Place several ribbon graphs side by side, renumbering half-edges in order."""
    vertex: list[str] = []
    succ: list[int] = []
    angle: list[int] = []
    right: list[bool] = []
    face: list[str] = []
    for g in graphs:
        offset = len(vertex)
        vertex.extend(g.vertex)
        succ.extend(s + offset for s in g.succ)
        angle.extend(g.angle)
        right.extend(g.right)
        face.extend(g.face)
    return RibbonGraph(vertex, succ, angle, right, face)


def relabel(graph: RibbonGraph, vertex_names: dict[str, str], face_names: dict[str, str]) -> RibbonGraph:
    """Rename zeros and faces; names missing from the maps are kept."""
    return RibbonGraph(
        [vertex_names.get(v, v) for v in graph.vertex],
        graph.succ,
        graph.angle,
        graph.right,
        [face_names.get(f, f) for f in graph.face],
    )
