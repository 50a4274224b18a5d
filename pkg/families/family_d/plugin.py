"""
D signatures: one zero, two pairs of poles with cancelling residues, and
residueless poles otherwise.

Boundary types:
- IIIa: two top chain surfaces, each between members of different pairs; bottom chain between the nodes
- IIIb: one pole of a pair inside the top chain, its partner at the bottom
- IIIc: one pair on top, the other pair at the bottom with the node inside the chain
"""
from math import gcd
from typing import Iterator

from core.blocks import arrangements, residueless_slots, z2_ribbon
from core.boundary import BoundaryPoint
from core.family_interface import FamilyInterface, FAMILY_API_VERSION
from core.levels import LevelStructure, assemble_levels, placeholder
from core.models import Family, PredictedCount, ValidationError
from core.signature import Signature, label_index, pole_label, ramification_profiles, zero_label


def _orders(pair: tuple[int, ...]) -> tuple[tuple[int, int], tuple[int, int]]:
    return (pair[0], pair[1]), (pair[1], pair[0])


class FamilyDPlugin(FamilyInterface):
    """Boundary enumeration and component counts for D signatures."""

    FAMILY_API_VERSION = FAMILY_API_VERSION
    family = Family.D
    name = "D signatures"
    version = "1.0.0"
    description = "One zero, two pairs of poles with opposite residues"
    boundary_types = ("D-IIIa", "D-IIIb", "D-IIIc")

    # ==================== Enumeration ====================

    def raw_boundaries(self, sig: Signature) -> Iterator[BoundaryPoint]:
        b = sig.poles
        first, second = sig.multi_blocks
        for tau, Cvec in arrangements(b, sig.residueless):
            k = len(tau)
            for one, other in ((first, second), (second, first)):
                for p0, p1 in _orders(one):
                    for h1, h2 in _orders(other):
                        for l1 in range(k + 1):
                            for l2 in range(l1, k + 1):
                                kappa1 = b[p0] + b[h1] - 1 + sum(b[j] for j in tau[:l1])
                                kappa2 = b[h2] + b[p1] - 1 + sum(b[j] for j in tau[l1:l2])
                                for w in range(gcd(kappa1, kappa2)):
                                    yield BoundaryPoint(
                                        sig, "D-IIIa",
                                        tuple(pole_label(j) for j in (p0, h1, h2, p1)),
                                        l1, l2, tau, None, Cvec, prong=(0, w),
                                    )

                for h1, h2 in _orders(one):
                    for h3, h4 in _orders(other):
                        labels = tuple(pole_label(j) for j in (h1, h2, h3, h4))
                        for l1 in range(k + 1):
                            for l2 in range(l1, k + 1):
                                for C in range(1, b[h1]):
                                    yield BoundaryPoint(sig, "D-IIIb", labels, l1, l2, tau, C, Cvec)
                                kappa = b[h1] + b[h2] - 1 + sum(b[j] for j in tau[:l1])
                                for C in range(1, kappa + 1):
                                    yield BoundaryPoint(sig, "D-IIIc", labels, l1, l2, tau, C, Cvec)

    # ==================== Realization ====================

    def realize(self, bp: BoundaryPoint) -> LevelStructure:
        builders = {
            "D-IIIa": self._type_three_a,
            "D-IIIb": self._type_three_b,
            "D-IIIc": self._type_three_c,
        }
        if bp.family not in builders:
            raise ValidationError(f"unknown D boundary type {bp.family}")
        if bp.l2 is None or bp.l1 > bp.l2:
            raise ValidationError(f"{bp.family} needs l1 <= l2")
        return builders[bp.family](bp)

    def _type_three_a(self, bp: BoundaryPoint) -> LevelStructure:
        b = bp.signature.poles
        p0, h1, h2, p1 = (label_index(x) for x in bp.h)
        l1, l2 = bp.l1, bp.l2
        kappa1 = b[p0] + b[h1] - 1 + sum(b[j] for j in bp.tau[:l1])
        kappa2 = b[h2] + b[p1] - 1 + sum(b[j] for j in bp.tau[l1:l2])
        n1, n2 = placeholder(0), placeholder(1)
        first = z2_ribbon(
            n1,
            (pole_label(p0), b[p0]),
            residueless_slots(b, bp.tau[:l1], bp.Cvec[:l1]),
            (pole_label(h1), b[h1]),
        )
        second = z2_ribbon(
            n2,
            (pole_label(h2), b[h2]),
            residueless_slots(b, bp.tau[l1:l2], bp.Cvec[l1:l2]),
            (pole_label(p1), b[p1]),
        )
        bottom = z2_ribbon(
            zero_label(0),
            (n1, kappa1 + 1),
            residueless_slots(b, bp.tau[l2:], bp.Cvec[l2:]),
            (n2, kappa2 + 1),
        )
        return assemble_levels([bottom], [first, second], {n1: kappa1, n2: kappa2})

    def _type_three_b(self, bp: BoundaryPoint) -> LevelStructure:
        b = bp.signature.poles
        h1, h2, h3, h4 = (label_index(x) for x in bp.h)
        l1, l2 = bp.l1, bp.l2
        if bp.C is None or not 1 <= bp.C <= b[h1] - 1:
            raise ValidationError(f"D-IIIb angle {bp.C} outside [1, {b[h1] - 1}]")
        kappa = b[h1] + b[h3] + b[h4] - 1 + sum(b[j] for j in bp.tau[:l2])
        node = placeholder(0)
        chain = (
            residueless_slots(b, bp.tau[:l1], bp.Cvec[:l1])
            + [(pole_label(h1), bp.C, b[h1] - bp.C)]
            + residueless_slots(b, bp.tau[l1:l2], bp.Cvec[l1:l2])
        )
        top = z2_ribbon(node, (pole_label(h3), b[h3]), chain, (pole_label(h4), b[h4]))
        bottom = z2_ribbon(
            zero_label(0),
            (pole_label(h2), b[h2]),
            residueless_slots(b, bp.tau[l2:], bp.Cvec[l2:]),
            (node, kappa + 1),
        )
        return assemble_levels([bottom], [top], {node: kappa})

    def _type_three_c(self, bp: BoundaryPoint) -> LevelStructure:
        b = bp.signature.poles
        h1, h2, h3, h4 = (label_index(x) for x in bp.h)
        l1, l2 = bp.l1, bp.l2
        kappa = b[h1] + b[h2] - 1 + sum(b[j] for j in bp.tau[:l1])
        if bp.C is None or not 1 <= bp.C <= kappa:
            raise ValidationError(f"D-IIIc angle {bp.C} outside [1, {kappa}]")
        node = placeholder(0)
        top = z2_ribbon(
            node,
            (pole_label(h1), b[h1]),
            residueless_slots(b, bp.tau[:l1], bp.Cvec[:l1]),
            (pole_label(h2), b[h2]),
        )
        chain = (
            residueless_slots(b, bp.tau[l1:l2], bp.Cvec[l1:l2])
            + [(node, bp.C, kappa + 1 - bp.C)]
            + residueless_slots(b, bp.tau[l2:], bp.Cvec[l2:])
        )
        bottom = z2_ribbon(zero_label(0), (pole_label(h3), b[h3]), chain, (pole_label(h4), b[h4]))
        return assemble_levels([bottom], [top], {node: kappa})

    # ==================== Predictions ====================

    def predicted_components(self, sig: Signature) -> PredictedCount:
        hyperelliptic = len(ramification_profiles(sig))
        residueless = [sig.poles[j] for j in sig.residueless]
        pairs = [tuple(sig.poles[j] for j in block) for block in sig.multi_blocks]
        simple = [p for p in pairs if p == (1, 1)]

        if len(simple) == 2:
            if any(x % 2 for x in residueless):
                return PredictedCount(hyperelliptic=hyperelliptic, non_hyperelliptic=1)
            if not residueless:
                return PredictedCount(
                    hyperelliptic=hyperelliptic,
                    by_spin={},
                    exception="no non-hyperelliptic component",
                )
            if residueless == [2]:
                return PredictedCount(
                    hyperelliptic=hyperelliptic,
                    non_hyperelliptic=1,
                    exception="one non-hyperelliptic component",
                    flags=["spin parity reported, not asserted"],
                )
            return PredictedCount(hyperelliptic=hyperelliptic, by_spin={0: 1, 1: 1})

        if len(simple) == 1:
            e3, e4 = next(p for p in pairs if p != (1, 1))
            delta = gcd(*residueless, e3, e4)
            by_index = {i: 1 for i in range(1, delta + 1)}
            exception = None
            if not residueless and e3 == e4:
                del by_index[delta]
                exception = f"no non-hyperelliptic component of index {delta}"
            return PredictedCount(
                hyperelliptic=hyperelliptic,
                by_index=by_index,
                modulus=delta,
                exception=exception,
            )

        return PredictedCount(hyperelliptic=hyperelliptic, non_hyperelliptic=1)
