"""
A signatures: three zeros and residueless poles only.

Only type I boundary points exist: a bottom cycle surface on two zeros
around the node, and a top cycle surface on the third zero and the node.
There is no classification; the nets are probed for connectedness. With a
zero of order zero the count is one component per cycle surface of the
stratum without the marked point.
"""
from itertools import combinations
from typing import Iterator

from core.blocks import arrangements, enumerate_z1, residueless_slots, z1_ribbon
from core.boundary import BoundaryPoint
from core.family_interface import FamilyInterface, FAMILY_API_VERSION
from core.levels import LevelStructure, assemble_levels, placeholder
from core.models import Family, PredictedCount, UnsupportedFamily, ValidationError
from core.signature import Signature, label_index, zero_label


class FamilyAPlugin(FamilyInterface):
    """Boundary enumeration for A signatures."""

    FAMILY_API_VERSION = FAMILY_API_VERSION
    family = Family.A
    name = "A signatures"
    version = "1.0.0"
    description = "Three zeros, every pole residueless"
    boundary_types = ("A-I",)

    def raw_boundaries(self, sig: Signature) -> Iterator[BoundaryPoint]:
        a = sig.zeros
        for tau, Cvec in arrangements(sig.poles, sig.residueless):
            for i, j in combinations(range(3), 2):
                k = 3 - i - j
                h = (zero_label(i), zero_label(j), zero_label(k))
                for l in range(1, len(tau) + 1):
                    C = a[i] + 1 - sum(Cvec[l:])
                    yield BoundaryPoint(sig, "A-I", h, l, None, tau, C, Cvec)

    def realize(self, bp: BoundaryPoint) -> LevelStructure:
        if bp.family != "A-I":
            raise ValidationError(f"unknown A boundary type {bp.family}")
        sig = bp.signature
        a, b = sig.zeros, sig.poles
        i, j, k = (label_index(x) for x in bp.h)
        l = bp.l1
        if l < 1:
            raise ValidationError("A-I needs a residueless pole on top")
        kappa = sum(b[x] for x in bp.tau[:l]) - a[k] - 1
        if kappa < 1 or bp.C is None or not 1 <= bp.C <= kappa:
            raise ValidationError(f"A-I angle {bp.C} with enhancement {kappa}")
        node = placeholder(0)
        top = z1_ribbon(zero_label(k), node, residueless_slots(b, bp.tau[:l], bp.Cvec[:l]))
        bottom = z1_ribbon(
            zero_label(i),
            zero_label(j),
            residueless_slots(b, bp.tau[l:], bp.Cvec[l:]) + [(node, bp.C, kappa + 1 - bp.C)],
        )
        return assemble_levels([bottom], [top], {node: kappa})

    def predicted_components(self, sig: Signature) -> PredictedCount:
        """
        One component per cycle surface when a zero has order zero.

        Raises:
            UnsupportedFamily: when every zero has positive order
        """
        positive = [a for a in sig.zeros if a > 0]
        if len(positive) != 2:
            raise UnsupportedFamily(f"family {self.family.value} has no predicted counts for {sig.render()}")
        surfaces = enumerate_z1(positive[0], positive[1], [sig.poles[j] for j in sig.residueless])
        return PredictedCount(
            hyperelliptic=0,
            non_hyperelliptic=len(surfaces),
            exception="marked point: one component per cycle surface",
        )
