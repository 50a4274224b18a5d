"""
Zero-dimensional building blocks.

A cycle surface (Z1) has two zeros joined by parallel saddle connections,
one residueless pole between each consecutive pair. A chain surface (Z2)
has one zero with nested loops, residueless poles in the chain between
them and the two non-residueless poles at the ends.
"""
from dataclasses import dataclass
from itertools import permutations, product
from typing import Optional, Sequence

from .models import ValidationError
from .ribbon import RibbonGraph
from .signature import pole_label


# A pole slot inside a building block: (face label, C, D)
PoleSlot = tuple[str, int, int]


def z1_ribbon(za: str, zb: str, poles: Sequence[PoleSlot]) -> RibbonGraph:
    """
    Ribbon graph of a cycle surface.

    Args:
        za: label of the zero where the angles C are measured
        zb: label of the zero where the angles D are measured
        poles: (label, C, D) in cyclic order

    Returns:
        The ribbon graph; edge i separates poles i-1 and i
    """
    k = len(poles)
    if k == 0:
        raise ValidationError("a cycle surface needs at least one pole")
    size = 2 * k
    vertex = [""] * size
    succ = [0] * size
    angle = [0] * size
    right = [False] * size
    face = [""] * size
    for i, (label, c, d) in enumerate(poles):
        a_i, b_next = 2 * i, 2 * ((i + 1) % k) + 1
        vertex[a_i] = za
        right[a_i] = True
        succ[a_i] = 2 * ((i + 1) % k)
        angle[a_i] = 2 * c
        face[a_i] = label

        vertex[b_next] = zb
        right[b_next] = False
        succ[b_next] = 2 * i + 1
        angle[b_next] = 2 * d
        face[b_next] = label
    return RibbonGraph(vertex, succ, angle, right, face)


def z2_ribbon(
    z: str,
    inner: tuple[str, int],
    chain: Sequence[PoleSlot],
    outer: tuple[str, int],
) -> RibbonGraph:
    """
    Ribbon graph of a chain surface.

    Args:
        z: label of the zero
        inner: (label, order) of the pole enclosed by the first loop
        chain: (label, C, D) of the poles between consecutive loops
        outer: (label, order) of the pole outside the last loop

    Returns:
        The ribbon graph; loop j has half-edges 2j (right) and 2j+1 (left)
    """
    m = len(chain)
    size = 2 * (m + 1)
    vertex = [z] * size
    succ = [0] * size
    angle = [0] * size
    right = [bool(h % 2 == 0) for h in range(size)]
    face = [""] * size

    inner_label, e1 = inner
    outer_label, e2 = outer
    succ[0] = 1
    angle[0] = 2 * e1 - 1
    face[0] = inner_label
    for j in range(1, m + 1):
        label, c, d = chain[j - 1]
        succ[2 * j] = 2 * (j - 1)
        angle[2 * j] = 2 * c
        face[2 * j] = label

        succ[2 * (j - 1) + 1] = 2 * j + 1
        angle[2 * (j - 1) + 1] = 2 * d
        face[2 * (j - 1) + 1] = label
    succ[2 * m + 1] = 2 * m
    angle[2 * m + 1] = 2 * e2 - 1
    face[2 * m + 1] = outer_label
    return RibbonGraph(vertex, succ, angle, right, face)


@dataclass(frozen=True)
class CycleSurface:
    """A Z1 surface: cyclic pole order and angles C at the first zero."""
    a1: int
    a2: int
    pole_orders: tuple[int, ...]
    order: tuple[int, ...]
    angles: tuple[int, ...]

    @property
    def complementary(self) -> tuple[int, ...]:
        return tuple(b - c for b, c in zip(self.pole_orders, self.angles))

    def validate(self) -> None:
        if sorted(self.order) != list(range(len(self.pole_orders))):
            raise ValidationError("cyclic order must list every pole once")
        if self.order and self.order[0] != min(self.order):
            raise ValidationError("cyclic order is not rotated to its smallest pole")
        for b, c in zip(self.pole_orders, self.angles):
            if not 1 <= c <= b - 1:
                raise ValidationError(f"angle {c} outside [1, {b - 1}]")
        if sum(self.angles) != self.a1 + 1:
            raise ValidationError("angles at the first zero must sum to a1 + 1")
        if sum(self.complementary) != self.a2 + 1:
            raise ValidationError("angles at the second zero must sum to a2 + 1")

    def ribbon(
        self,
        zero_labels: tuple[str, str] = ("z1", "z2"),
        pole_labels: Optional[Sequence[str]] = None,
    ) -> RibbonGraph:
        labels = pole_labels or [pole_label(j) for j in range(len(self.pole_orders))]
        d = self.complementary
        return z1_ribbon(
            zero_labels[0],
            zero_labels[1],
            [(labels[j], self.angles[j], d[j]) for j in self.order],
        )


@dataclass(frozen=True)
class ChainSurface:
    """A Z2 surface: linear order of the residueless poles and their angles."""
    a: int
    residueless_orders: tuple[int, ...]
    e1: int
    e2: int
    order: tuple[int, ...]
    angles: tuple[int, ...]

    @property
    def complementary(self) -> tuple[int, ...]:
        return tuple(b - c for b, c in zip(self.residueless_orders, self.angles))

    def validate(self) -> None:
        if sorted(self.order) != list(range(len(self.residueless_orders))):
            raise ValidationError("linear order must list every residueless pole once")
        if self.e1 < 1 or self.e2 < 1:
            raise ValidationError("end poles must have positive order")
        for b, c in zip(self.residueless_orders, self.angles):
            if not 1 <= c <= b - 1:
                raise ValidationError(f"angle {c} outside [1, {b - 1}]")
        if self.a + 1 != self.e1 + self.e2 - 1 + sum(self.residueless_orders):
            raise ValidationError("zero order does not close the angle bookkeeping")

    def ribbon(
        self,
        zero_label: str = "z1",
        pole_labels: Optional[Sequence[str]] = None,
        end_labels: tuple[str, str] = ("q1", "q2"),
    ) -> RibbonGraph:
        labels = pole_labels or [pole_label(j) for j in range(len(self.residueless_orders))]
        d = self.complementary
        return z2_ribbon(
            zero_label,
            (end_labels[0], self.e1),
            [(labels[j], self.angles[j], d[j]) for j in self.order],
            (end_labels[1], self.e2),
        )


def _angle_tuples(pole_orders: Sequence[int], total: Optional[int] = None):
    for angles in product(*(range(1, b) for b in pole_orders)):
        if total is None or sum(angles) == total:
            yield angles


def enumerate_z1(a1: int, a2: int, pole_orders: Sequence[int]) -> list[CycleSurface]:
    """
    All cycle surfaces with the given zero and pole orders.

    Cyclic orders are counted up to rotation and start with pole 0.
    """
    orders = tuple(pole_orders)
    if a1 < 0 or a2 < 0 or a1 + a2 != sum(orders) - 2:
        raise ValidationError(f"({a1}, {a2}) and poles {orders} do not form a Z1 stratum")
    if not orders:
        return []
    result = []
    for rest in permutations(range(1, len(orders))):
        cyclic = (0,) + rest
        for angles in _angle_tuples(orders, a1 + 1):
            result.append(CycleSurface(a1, a2, orders, cyclic, tuple(angles)))
    return result


def enumerate_z2(a: int, residueless_orders: Sequence[int], e1: int, e2: int) -> list[ChainSurface]:
    """All chain surfaces with the given zero, residueless and end pole orders."""
    orders = tuple(residueless_orders)
    if e1 < 1 or e2 < 1 or a != e1 + e2 + sum(orders) - 2:
        raise ValidationError(f"{a} with poles {orders} and ends ({e1}, {e2}) is not a Z2 stratum")
    result = []
    for linear in permutations(range(len(orders))):
        for angles in _angle_tuples(orders):
            result.append(ChainSurface(a, orders, e1, e2, tuple(linear), tuple(angles)))
    return result


def residueless_slots(poles: Sequence[int], tau: Sequence[int], Cvec: Sequence[int]) -> list[PoleSlot]:
    """Pole slots for residueless pole indices tau with angles Cvec."""
    return [(pole_label(j), c, poles[j] - c) for j, c in zip(tau, Cvec)]


def arrangements(poles: Sequence[int], indices: Sequence[int]):
    """Every ordering of the given pole indices with every admissible angle tuple."""
    for tau in permutations(indices):
        for Cvec in _angle_tuples([poles[j] for j in tau]):
            yield tau, tuple(Cvec)
