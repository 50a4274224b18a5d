"""
B signatures: two zeros, one pair of poles whose residues cancel, and
residueless poles otherwise.

Boundary types:
- I: bottom cycle surface on both zeros; top chain surface between the pair
- IIIa: two bottom chain surfaces, one per pole of the pair; top cycle surface on two nodes
- IIIb: bottom chain surface with one pole of the pair; top cycle surface with the other
- IIIc: bottom chain surface with the node inside the chain; top cycle surface on a zero
"""
from math import gcd
from typing import Iterator

from core.blocks import arrangements, enumerate_z2, residueless_slots, z1_ribbon, z2_ribbon
from core.boundary import BoundaryPoint
from core.family_interface import FamilyInterface, FAMILY_API_VERSION
from core.levels import LevelStructure, assemble_levels, placeholder
from core.models import Family, InconsistencyError, PredictedCount, ValidationError
from core.signature import (
    Signature,
    label_index,
    pole_label,
    ramification_profiles,
    zero_label,
)

ZERO_ORDERS = ((0, 1), (1, 0))


class FamilyBPlugin(FamilyInterface):
    """Boundary enumeration and component counts for B signatures."""

    FAMILY_API_VERSION = FAMILY_API_VERSION
    family = Family.B
    name = "B signatures"
    version = "1.0.0"
    description = "Two zeros, one pair of poles with opposite residues"
    boundary_types = ("B-I", "B-IIIa", "B-IIIb", "B-IIIc")

    @staticmethod
    def _pair(sig: Signature) -> tuple[int, int]:
        q1, q2 = sig.multi_blocks[0]
        return q1, q2

    # ==================== Enumeration ====================

    def raw_boundaries(self, sig: Signature) -> Iterator[BoundaryPoint]:
        q1, q2 = self._pair(sig)
        a = sig.zeros
        b = sig.poles
        first_level = 0 if self.options.get("admit_empty_top_type_one", True) else 1

        for tau, Cvec in arrangements(b, sig.residueless):
            k = len(tau)

            for l in range(first_level, k + 1):
                C = a[0] + 1 - sum(Cvec[l:])
                yield BoundaryPoint(sig, "B-I", (), l, None, tau, C, Cvec)

            for zb, zt in ZERO_ORDERS:
                for l1 in range(k + 1):
                    for l2 in range(l1 + 1, k + 1):
                        kappa1 = a[zb] - b[q1] + 1 - sum(b[j] for j in tau[:l1])
                        kappa2 = a[zt] - b[q2] + 1 - sum(b[j] for j in tau[l2:])
                        if kappa1 < 1 or kappa2 < 1:
                            continue
                        for w in range(gcd(kappa1, kappa2)):
                            yield BoundaryPoint(
                                sig, "B-IIIa", (zero_label(zb), zero_label(zt)),
                                l1, l2, tau, None, Cvec, prong=(0, w),
                            )

                for qt, qb in ((q1, q2), (q2, q1)):
                    for C in range(1, b[qt]):
                        for l in range(k + 1):
                            yield BoundaryPoint(
                                sig, "B-IIIb",
                                (zero_label(zt), zero_label(zb), pole_label(qt), pole_label(qb)),
                                l, None, tau, C, Cvec,
                            )

                for l1 in range(k + 1):
                    for l2 in range(l1 + 1, k + 1):
                        kappa = sum(b[j] for j in tau[l1:l2]) - a[zt] - 1
                        for C in range(1, kappa + 1):
                            yield BoundaryPoint(
                                sig, "B-IIIc", (zero_label(zb), zero_label(zt)),
                                l1, l2, tau, C, Cvec,
                            )

    # ==================== Realization ====================

    def realize(self, bp: BoundaryPoint) -> LevelStructure:
        builders = {
            "B-I": self._type_one,
            "B-IIIa": self._type_three_a,
            "B-IIIb": self._type_three_b,
            "B-IIIc": self._type_three_c,
        }
        if bp.family not in builders:
            raise ValidationError(f"unknown B boundary type {bp.family}")
        return builders[bp.family](bp)

    def _type_one(self, bp: BoundaryPoint) -> LevelStructure:
        sig = bp.signature
        q1, q2 = self._pair(sig)
        b = sig.poles
        l = bp.l1
        node = placeholder(0)
        kappa = b[q1] + b[q2] - 1 + sum(b[j] for j in bp.tau[:l])
        if bp.C is None or not 1 <= bp.C <= kappa:
            raise ValidationError(f"B-I angle {bp.C} outside [1, {kappa}]")
        top = z2_ribbon(
            node,
            (pole_label(q1), b[q1]),
            residueless_slots(b, bp.tau[:l], bp.Cvec[:l]),
            (pole_label(q2), b[q2]),
        )
        bottom = z1_ribbon(
            zero_label(0),
            zero_label(1),
            residueless_slots(b, bp.tau[l:], bp.Cvec[l:]) + [(node, bp.C, kappa + 1 - bp.C)],
        )
        return assemble_levels([bottom], [top], {node: kappa})

    def _type_three_a(self, bp: BoundaryPoint) -> LevelStructure:
        sig = bp.signature
        q1, q2 = self._pair(sig)
        a, b = sig.zeros, sig.poles
        z_first, z_second = (label_index(x) for x in bp.h)
        l1, l2 = bp.l1, bp.l2
        if l2 is None or l1 >= l2:
            raise ValidationError("B-IIIa needs l1 < l2")
        kappa1 = a[z_first] - b[q1] + 1 - sum(b[j] for j in bp.tau[:l1])
        kappa2 = a[z_second] - b[q2] + 1 - sum(b[j] for j in bp.tau[l2:])
        if kappa1 < 1 or kappa2 < 1:
            raise ValidationError(f"B-IIIa enhancements ({kappa1}, {kappa2})")
        n1, n2 = placeholder(0), placeholder(1)
        first = z2_ribbon(
            zero_label(z_first),
            (pole_label(q1), b[q1]),
            residueless_slots(b, bp.tau[:l1], bp.Cvec[:l1]),
            (n1, kappa1 + 1),
        )
        second = z2_ribbon(
            zero_label(z_second),
            (n2, kappa2 + 1),
            residueless_slots(b, bp.tau[l2:], bp.Cvec[l2:]),
            (pole_label(q2), b[q2]),
        )
        top = z1_ribbon(n1, n2, residueless_slots(b, bp.tau[l1:l2], bp.Cvec[l1:l2]))
        return assemble_levels([first, second], [top], {n1: kappa1, n2: kappa2})

    def _type_three_b(self, bp: BoundaryPoint) -> LevelStructure:
        sig = bp.signature
        a, b = sig.zeros, sig.poles
        zt, zb, qt, qb = (label_index(x) for x in bp.h)
        l = bp.l1
        if bp.C is None or not 1 <= bp.C <= b[qt] - 1:
            raise ValidationError(f"B-IIIb angle {bp.C} outside [1, {b[qt] - 1}]")
        kappa = a[zb] - b[qb] + 1 - sum(b[j] for j in bp.tau[:l])
        if kappa < 1:
            raise ValidationError(f"B-IIIb enhancement {kappa}")
        node = placeholder(0)
        bottom = z2_ribbon(
            zero_label(zb),
            (pole_label(qb), b[qb]),
            residueless_slots(b, bp.tau[:l], bp.Cvec[:l]),
            (node, kappa + 1),
        )
        top = z1_ribbon(
            zero_label(zt),
            node,
            residueless_slots(b, bp.tau[l:], bp.Cvec[l:]) + [(pole_label(qt), bp.C, b[qt] - bp.C)],
        )
        return assemble_levels([bottom], [top], {node: kappa})

    def _type_three_c(self, bp: BoundaryPoint) -> LevelStructure:
        sig = bp.signature
        q1, q2 = self._pair(sig)
        a, b = sig.zeros, sig.poles
        zb, zt = (label_index(x) for x in bp.h)
        l1, l2 = bp.l1, bp.l2
        if l2 is None or l1 >= l2:
            raise ValidationError("B-IIIc needs l1 < l2")
        kappa = sum(b[j] for j in bp.tau[l1:l2]) - a[zt] - 1
        if bp.C is None or not 1 <= bp.C <= kappa:
            raise ValidationError(f"B-IIIc angle {bp.C} outside [1, {kappa}]")
        node = placeholder(0)
        top = z1_ribbon(node, zero_label(zt), residueless_slots(b, bp.tau[l1:l2], bp.Cvec[l1:l2]))
        chain = (
            residueless_slots(b, bp.tau[:l1], bp.Cvec[:l1])
            + [(node, bp.C, kappa + 1 - bp.C)]
            + residueless_slots(b, bp.tau[l2:], bp.Cvec[l2:])
        )
        bottom = z2_ribbon(zero_label(zb), (pole_label(q1), b[q1]), chain, (pole_label(q2), b[q2]))
        return assemble_levels([bottom], [top], {node: kappa})

    # ==================== Predictions ====================

    def predicted_components(self, sig: Signature) -> PredictedCount:
        q1, q2 = self._pair(sig)
        a1, a2 = sig.zeros
        e1, e2 = sig.poles[q1], sig.poles[q2]
        residueless = [sig.poles[j] for j in sig.residueless]
        if min(a1, a2) == 0:
            # Forgetting the marked point leaves isolated chain surfaces.
            surfaces = enumerate_z2(max(a1, a2), residueless, e1, e2)
            return PredictedCount(
                hyperelliptic=0,
                non_hyperelliptic=len(surfaces),
                exception="marked point: one component per chain surface",
            )
        hyperelliptic = len(ramification_profiles(sig))
        all_double = all(x == 2 for x in residueless)

        if (e1, e2) != (1, 1):
            if a1 == a2 and e1 == e2 and all_double:
                return PredictedCount(
                    hyperelliptic=hyperelliptic,
                    non_hyperelliptic=0,
                    exception="equal zeros, equal pair, double residueless poles",
                    flags=["exception condition taken from the proof of the statement"],
                )
            return PredictedCount(hyperelliptic=hyperelliptic, non_hyperelliptic=1)

        delta = gcd(a1, a2, *residueless)
        if gcd(a1, *residueless) != delta:
            raise InconsistencyError(f"{sig.render()}: the second zero changes the index modulus")
        if a1 == a2 and all_double:
            return PredictedCount(
                hyperelliptic=hyperelliptic,
                by_index={},
                modulus=delta,
                exception="equal zeros with double residueless poles",
            )
        by_index = {i: 1 for i in range(1, delta + 1)}
        exception = None
        if a1 == a2 and (residueless == [2 * a1] or residueless == [a1, a1]):
            del by_index[delta]
            exception = f"no non-hyperelliptic component of index {delta}"
        return PredictedCount(
            hyperelliptic=hyperelliptic,
            by_index=by_index,
            modulus=delta,
            exception=exception,
        )
