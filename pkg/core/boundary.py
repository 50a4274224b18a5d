"""
Boundary points of one-dimensional strata and their half-arc stars.

A BoundaryPoint holds the raw combinatorial data of a two-level
multi-scale differential as listed per family (h-tuple, level counts,
permutation of the residueless poles, angles). Its realization is a
LevelStructure; two raw descriptions are the same boundary point iff their
realizations have equal canonical codes and equal prong classes.
"""
from dataclasses import dataclass, field, replace
from functools import lru_cache
from math import gcd, lcm
from typing import Any, Optional
import logging

from .levels import LevelStructure
from .models import ClosureError, Family, InvalidHalfArc, UnsupportedFamily, ValidationError
from .signature import Signature, classify_one_dim, pole_label

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProngMatchingClass:
    """
    A diagonal-rotation orbit in Z/kappa1 x Z/kappa2, in the description frame.

    canonical_prong converts it to the frame of the realized levels.
    """
    moduli: tuple[int, int]
    representative: tuple[int, int]

    @classmethod
    def of(cls, moduli: tuple[int, int], u: int, v: int) -> "ProngMatchingClass":
        """Class of (u, v), represented by its lexicographically least orbit element."""
        g = gcd(*moduli)
        return cls(moduli=moduli, representative=(0, (u + v) % g))

    @property
    def orbit(self) -> frozenset[tuple[int, int]]:
        k1, k2 = self.moduli
        u, v = self.representative
        return frozenset(((u + k) % k1, (v - k) % k2) for k in range(lcm(k1, k2)))

    def to_dict(self) -> dict[str, Any]:
        return {"moduli": list(self.moduli), "representative": list(self.representative)}


@dataclass(frozen=True)
class BoundaryPoint:
    """
    Raw or canonical data of a boundary point.

    h names the zeros or poles that select the table row, as labels.
    tau lists residueless pole indices; Cvec[i] is the angle attached to
    tau[i]. prong is a representative (u, v) for two-node points.
    """
    signature: Signature = field(repr=False)
    family: str
    h: tuple[str, ...] = ()
    l1: int = 0
    l2: Optional[int] = None
    tau: tuple[int, ...] = ()
    C: Optional[int] = None
    Cvec: tuple[int, ...] = ()
    kappa: tuple[int, ...] = ()
    prong: Optional[tuple[int, int]] = None

    @property
    def family_letter(self) -> str:
        return self.family.split("-")[0]

    @property
    def prong_class(self) -> Optional[ProngMatchingClass]:
        if self.prong is None or len(self.kappa) != 2:
            return None
        return ProngMatchingClass.of((self.kappa[0], self.kappa[1]), *self.prong)

    @property
    def star_size(self) -> int:
        if len(self.kappa) == 2:
            return 2 * lcm(*self.kappa)
        return 2 * self.kappa[0]

    def sort_key(self) -> tuple:
        return (
            self.family,
            self.h,
            self.l1,
            -1 if self.l2 is None else self.l2,
            self.tau,
            0 if self.C is None else self.C,
            self.Cvec,
            self.prong or (-1, -1),
        )

    def describe(self) -> str:
        parts = [self.family]
        if self.h:
            parts.append("h=(" + ",".join(self.h) + ")")
        parts.append(f"l={self.l1}" if self.l2 is None else f"l=({self.l1},{self.l2})")
        if self.tau:
            parts.append("tau=(" + ",".join(pole_label(j) for j in self.tau) + ")")
            parts.append("Cvec=(" + ",".join(str(c) for c in self.Cvec) + ")")
        if self.C is not None:
            parts.append(f"C={self.C}")
        if self.kappa:
            parts.append("kappa=(" + ",".join(str(k) for k in self.kappa) + ")")
        pr = self.prong_class
        if pr is not None:
            parts.append(f"Pr=({pr.representative[0]},{pr.representative[1]})")
        return " ".join(parts)

    def to_dict(self) -> dict[str, Any]:
        pr = self.prong_class
        return {
            "family": self.family,
            "h": list(self.h),
            "l1": self.l1,
            "l2": self.l2,
            "tau": [pole_label(j) for j in self.tau],
            "C": self.C,
            "Cvec": list(self.Cvec),
            "kappa": list(self.kappa),
            "prong_class": pr.to_dict() if pr is not None else None,
        }


@dataclass(frozen=True)
class HalfArc:
    """A boundary point with a doubled prong label."""
    boundary: BoundaryPoint
    label: tuple[int, ...]

    @property
    def epsilon(self) -> int:
        return self.label[0] % 2

    def sort_key(self) -> tuple:
        return (self.boundary.sort_key(), self.label)


# ==================== Realization ====================

def family_plugin(sig: Signature):
    """The loaded family plugin handling sig."""
    from .family_manager import get_family_manager

    family = classify_one_dim(sig)
    if family in (Family.E, Family.NOT_ONE_DIMENSIONAL):
        raise UnsupportedFamily(f"{sig.render()} is {family.value}; no boundary enumeration")
    plugin = get_family_manager().get_family(family)
    if plugin is None:
        raise UnsupportedFamily(f"no family plugin loaded for {family.value}")
    return plugin


@lru_cache(maxsize=65536)
def realize(b: BoundaryPoint) -> LevelStructure:
    """
    Build and validate the two levels described by b.

    Raises:
        ValidationError: if the raw data violates a family constraint
    """
    levels = family_plugin(b.signature).realize(b)
    levels.validate(b.signature)
    if len(levels.nodes) == 2 and b.prong is None:
        raise ValidationError(f"{b.family} needs a prong-matching representative")
    if len(levels.nodes) != 2 and b.prong is not None:
        raise ValidationError(f"{b.family} has a single node and no prong class")
    return levels


def canonical_prong(b: BoundaryPoint) -> Optional[int]:
    """
    Prong class of a two-node point in the canonical frame of its levels.

    The description carries (u, v) relative to the first residueless pole
    listed on each side, so re-listing tau moves u + v by the order of the
    pole moved to the end. The raw references of the realized levels follow
    the same listing, and their offsets from the canonical references
    convert the class.
    """
    levels = realize(b)
    if len(levels.nodes) != 2:
        return None
    k1, k2 = levels.kappa_tuple
    u, v = b.prong  # type: ignore[misc]
    first, second = (levels.frame_offset(s) for s in levels.nodes)
    return (-(u + v) - (first - second) // 2) % gcd(k1, k2)


def boundary_key(b: BoundaryPoint) -> tuple:
    """Hashable identity of the boundary point described by b."""
    levels = realize(b)
    return (levels.code, canonical_prong(b))


def _normalized(b: BoundaryPoint, levels: LevelStructure) -> BoundaryPoint:
    kappa = levels.kappa_tuple
    prong = None
    if len(kappa) == 2:
        prong = ProngMatchingClass.of((kappa[0], kappa[1]), *b.prong).representative  # type: ignore[misc]
    return replace(b, kappa=kappa, prong=prong)


class BoundaryIndex:
    """All canonical boundary points of one stratum, addressable by key."""

    def __init__(self, sig: Signature):
        self.signature = sig
        self.by_key: dict[tuple, BoundaryPoint] = {}
        rejected = 0
        plugin = family_plugin(sig)
        for raw in plugin.raw_boundaries(sig):
            try:
                levels = realize(raw)
            except ValidationError:
                rejected += 1
                continue
            key = boundary_key(raw)
            candidate = _normalized(raw, levels)
            current = self.by_key.get(key)
            if current is None or candidate.sort_key() < current.sort_key():
                self.by_key[key] = candidate
        self.points: list[BoundaryPoint] = sorted(self.by_key.values(), key=BoundaryPoint.sort_key)
        log.debug(
            "%s: %d boundary points, %d raw descriptions rejected",
            sig.render(), len(self.points), rejected,
        )

    def lookup(self, key: tuple) -> BoundaryPoint:
        try:
            return self.by_key[key]
        except KeyError:
            raise ClosureError(
                f"a contraction in {self.signature.render()} reached a boundary point outside the enumeration"
            ) from None


@lru_cache(maxsize=256)
def boundary_index(sig: Signature) -> BoundaryIndex:
    return BoundaryIndex(sig)


def clear_caches() -> None:
    """Forget realized levels and indices, e.g. after family options change."""
    realize.cache_clear()
    boundary_index.cache_clear()


# ==================== Operations ====================

def enumerate_boundaries(sig: Signature) -> list[BoundaryPoint]:
    """
    Every canonical boundary point of a one-dimensional stratum.

    Raises:
        UnsupportedFamily: for E-signatures or strata of another dimension
    """
    return list(boundary_index(sig).points)


def canonicalize(b: BoundaryPoint) -> BoundaryPoint:
    """
    Canonical representative of raw boundary data.

    Raises:
        ValidationError: if the data is invalid or matches no boundary point
    """
    key = boundary_key(b)
    index = boundary_index(b.signature)
    if key not in index.by_key:
        raise ValidationError(f"{b.describe()} does not describe a boundary point")
    return index.by_key[key]


def half_arcs(b: BoundaryPoint) -> list[HalfArc]:
    """The star of b: 2 kappa half-arcs, or 2 lcm(kappa1, kappa2) for two nodes."""
    if len(b.kappa) == 1:
        return [HalfArc(b, (L,)) for L in range(2 * b.kappa[0])]
    k1, k2 = b.kappa
    w = canonical_prong(b) or 0
    return [
        HalfArc(b, (j % (2 * k1), (2 * w - j) % (2 * k2)))
        for j in range(2 * lcm(k1, k2))
    ]


def check_half_arc(h: HalfArc) -> None:
    """Raise InvalidHalfArc unless h lies in the star of its boundary point."""
    b = h.boundary
    if len(h.label) != len(b.kappa):
        raise InvalidHalfArc(f"label {h.label} does not fit kappa {b.kappa}")
    if any(not 0 <= x < 2 * k for x, k in zip(h.label, b.kappa)):
        raise InvalidHalfArc(f"label {h.label} out of range for kappa {b.kappa}")
    if len(b.kappa) == 2:
        k1, k2 = b.kappa
        w = canonical_prong(b) or 0
        if (h.label[0] + h.label[1] - 2 * w) % (2 * gcd(k1, k2)):
            raise InvalidHalfArc(f"label {h.label} lies outside the prong class of {b.describe()}")
