from dataclasses import replace
from math import gcd, lcm

import pytest

from core.boundary import (
    BoundaryPoint,
    HalfArc,
    ProngMatchingClass,
    canonical_prong,
    canonicalize,
    check_half_arc,
    enumerate_boundaries,
    half_arcs,
    realize,
)
from core.models import InvalidHalfArc, UnsupportedFamily, ValidationError
from core.signature import parse_signature

SMALL_STRATA = [
    "1 | -1,-1,-1",
    "3 | -2 | -1,-1,-1",
    "1,1 | -2 | -1,-1",
    "1,2 | -2 | -1,-2",
    "2,2 | -4 | -1,-1",
    "2 | -1,-1 | -1,-1",
    "4 | -2 | -1,-1 | -1,-1",
    "4 | -1,-1 | -2,-2",
]


class TestProngMatchingClass:
    def test_orbit_size(self):
        pr = ProngMatchingClass.of((2, 3), 0, 0)
        assert len(pr.orbit) == lcm(2, 3)

    def test_diagonal_rotation_is_same_class(self):
        assert ProngMatchingClass.of((4, 6), 1, 3) == ProngMatchingClass.of((4, 6), 2, 2)

    def test_number_of_classes(self):
        classes = {ProngMatchingClass.of((4, 6), u, v) for u in range(4) for v in range(6)}
        assert len(classes) == 2

    def test_representative_is_least(self):
        pr = ProngMatchingClass.of((4, 6), 3, 5)
        assert pr.representative == min(pr.orbit)


class TestEnumerate:
    def test_c_three_boundaries(self):
        points = enumerate_boundaries(parse_signature("1 | -1,-1,-1"))
        assert len(points) == 3
        assert all(b.family == "C-III" and b.kappa == (1,) for b in points)
        assert sorted(b.h[2] for b in points) == ["p1", "p2", "p3"]

    def test_d_simple_pairs(self):
        points = enumerate_boundaries(parse_signature("2 | -1,-1 | -1,-1"))
        families = {b.family for b in points}
        assert families == {"D-IIIa", "D-IIIc"}
        for b in points:
            assert all(k == 1 for k in b.kappa)

    @pytest.mark.parametrize("text", SMALL_STRATA)
    def test_duplicate_free(self, text):
        points = enumerate_boundaries(parse_signature(text))
        assert points
        assert len(set(points)) == len(points)
        assert points == sorted(points, key=BoundaryPoint.sort_key)

    @pytest.mark.parametrize("text", SMALL_STRATA)
    def test_canonicalize_is_identity_on_canonical(self, text):
        for b in enumerate_boundaries(parse_signature(text)):
            assert canonicalize(b) == b

    @pytest.mark.parametrize("text", SMALL_STRATA)
    def test_enhancements_positive(self, text):
        for b in enumerate_boundaries(parse_signature(text)):
            assert b.kappa and all(k >= 1 for k in b.kappa)
            assert all(1 <= c <= b.signature.poles[j] - 1 for j, c in zip(b.tau, b.Cvec))

    def test_unsupported(self):
        with pytest.raises(UnsupportedFamily):
            enumerate_boundaries(parse_signature("2 | -1,-1,-1,-1"))
        with pytest.raises(UnsupportedFamily):
            enumerate_boundaries(parse_signature("g=1; 2 | -2"))


class TestCanonicalize:
    def test_prong_rotation(self):
        sig = parse_signature("4 | -1,-1 | -2,-2")
        two_node = [b for b in enumerate_boundaries(sig) if b.prong is not None]
        assert two_node
        for b in two_node:
            u, v = b.prong
            k1, k2 = b.kappa
            rotated = replace(b, prong=((u + 1) % k1, (v - 1) % k2))
            assert canonicalize(rotated) == b

    def test_invalid_data(self):
        sig = parse_signature("1 | -1,-1,-1")
        b = enumerate_boundaries(sig)[0]
        with pytest.raises(ValidationError):
            canonicalize(replace(b, family="C-IV"))

    def test_idempotent_on_raw_data(self):
        from core.boundary import family_plugin

        sig = parse_signature("4 | -2 | -1,-1 | -1,-1")
        for raw in family_plugin(sig).raw_boundaries(sig):
            try:
                realize(raw)
            except ValidationError:
                continue
            c = canonicalize(raw)
            assert canonicalize(c) == c


class TestHalfArcs:
    @pytest.mark.parametrize("text", SMALL_STRATA)
    def test_star_size(self, text):
        for b in enumerate_boundaries(parse_signature(text)):
            arcs = half_arcs(b)
            expected = 2 * lcm(*b.kappa) if len(b.kappa) == 2 else 2 * b.kappa[0]
            assert len(arcs) == expected == b.star_size
            assert len(set(arcs)) == len(arcs)
            for h in arcs:
                check_half_arc(h)

    def test_c_boundary_has_two(self):
        b = enumerate_boundaries(parse_signature("1 | -1,-1,-1"))[0]
        assert len(half_arcs(b)) == 2

    def test_out_of_range(self):
        b = enumerate_boundaries(parse_signature("1 | -1,-1,-1"))[0]
        with pytest.raises(InvalidHalfArc):
            check_half_arc(HalfArc(b, (2,)))
        with pytest.raises(InvalidHalfArc):
            check_half_arc(HalfArc(b, (0, 0)))


def test_json_fields():
    b = enumerate_boundaries(parse_signature("4 | -1,-1 | -2,-2"))[0]
    assert set(b.to_dict()) == {"family", "h", "l1", "l2", "tau", "C", "Cvec", "kappa", "prong_class"}


class TestDescriptionFrame:
    """Re-listing the residueless poles of a two-node point moves its prong label."""

    SIG = "2,4 | -3 | -3 | -1,-1"

    @staticmethod
    def _cycled(b: BoundaryPoint, shift: int) -> BoundaryPoint:
        moved = b.tau[b.l1]
        tau = b.tau[:b.l1] + b.tau[b.l1 + 1:b.l2] + (moved,) + b.tau[b.l2:]
        Cvec = b.Cvec[:b.l1] + b.Cvec[b.l1 + 1:b.l2] + (b.Cvec[b.l1],) + b.Cvec[b.l2:]
        g = gcd(*b.kappa)
        return replace(b, tau=tau, Cvec=Cvec, prong=(0, (b.prong[1] - shift) % g))

    def _top_cycles(self):
        sig = parse_signature(self.SIG)
        points = [
            b for b in enumerate_boundaries(sig)
            if b.family == "B-IIIa" and b.l1 == 0 and b.l2 == len(b.tau)
        ]
        assert points
        return sig, points

    def test_moved_pole_shifts_prong(self):
        sig, points = self._top_cycles()
        for b in points:
            moved = sig.poles[b.tau[b.l1]]
            assert canonicalize(self._cycled(b, moved)) == b

    def test_unshifted_prong_is_another_point(self):
        sig, points = self._top_cycles()
        for b in points:
            assert gcd(*b.kappa) == 2
            assert canonicalize(self._cycled(b, 0)) != b

    def test_prong_classes_are_distinct(self):
        _, points = self._top_cycles()
        by_levels: dict = {}
        for b in points:
            by_levels.setdefault(realize(b).code, set()).add(canonical_prong(b))
        assert all(len(classes) == 2 for classes in by_levels.values())
