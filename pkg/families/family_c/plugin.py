"""
C signatures: one zero, a triple of poles whose residues cancel, and
residueless poles otherwise.

Every boundary point has type III: a top chain surface between two poles
of the triple and a bottom chain surface from the node to the third.
"""
from itertools import permutations
from typing import Iterator

from core.blocks import arrangements, residueless_slots, z2_ribbon
from core.boundary import BoundaryPoint
from core.family_interface import FamilyInterface, FAMILY_API_VERSION
from core.levels import LevelStructure, assemble_levels, placeholder
from core.models import Family, PredictedCount, ValidationError
from core.signature import Signature, label_index, pole_label, ramification_profiles, zero_label


class FamilyCPlugin(FamilyInterface):
    """Boundary enumeration for C signatures; the strata are connected."""

    FAMILY_API_VERSION = FAMILY_API_VERSION
    family = Family.C
    name = "C signatures"
    version = "1.0.0"
    description = "One zero, one triple of poles with cancelling residues"
    boundary_types = ("C-III",)

    def raw_boundaries(self, sig: Signature) -> Iterator[BoundaryPoint]:
        triple = sig.multi_blocks[0]
        for tau, Cvec in arrangements(sig.poles, sig.residueless):
            for h in permutations(triple):
                for l in range(len(tau) + 1):
                    yield BoundaryPoint(sig, "C-III", tuple(pole_label(j) for j in h), l, None, tau, None, Cvec)

    def realize(self, bp: BoundaryPoint) -> LevelStructure:
        if bp.family != "C-III":
            raise ValidationError(f"unknown C boundary type {bp.family}")
        b = bp.signature.poles
        h1, h2, h3 = (label_index(x) for x in bp.h)
        l = bp.l1
        kappa = b[h1] + b[h2] - 1 + sum(b[j] for j in bp.tau[:l])
        node = placeholder(0)
        top = z2_ribbon(
            node,
            (pole_label(h1), b[h1]),
            residueless_slots(b, bp.tau[:l], bp.Cvec[:l]),
            (pole_label(h2), b[h2]),
        )
        bottom = z2_ribbon(
            zero_label(0),
            (node, kappa + 1),
            residueless_slots(b, bp.tau[l:], bp.Cvec[l:]),
            (pole_label(h3), b[h3]),
        )
        return assemble_levels([bottom], [top], {node: kappa})

    def predicted_components(self, sig: Signature) -> PredictedCount:
        return PredictedCount(hyperelliptic=len(ramification_profiles(sig)), non_hyperelliptic=1)
