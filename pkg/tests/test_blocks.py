from itertools import permutations, product

import pytest

from core.blocks import (
    ChainSurface,
    CycleSurface,
    arrangements,
    enumerate_z1,
    enumerate_z2,
    z1_ribbon,
    z2_ribbon,
)
from core.boundary import enumerate_boundaries, realize
from core.models import ValidationError
from core.ribbon import canonical_level
from core.signature import label_index, parse_signature, pole_label


def naive_z1_count(a1, pole_orders):
    n = len(pole_orders)
    cyclic = sum(1 for p in permutations(range(n)) if p[0] == 0)
    tuples = sum(
        1 for c in product(*(range(1, b) for b in pole_orders)) if sum(c) == a1 + 1
    )
    return cyclic * tuples


class TestEnumerateZ1:
    def test_single_double_pole(self):
        surfaces = enumerate_z1(0, 0, (2,))
        assert len(surfaces) == 1
        assert surfaces[0].angles == (1,)

    def test_two_double_poles(self):
        assert len(enumerate_z1(1, 1, (2, 2))) == 1

    def test_two_triple_poles(self):
        surfaces = enumerate_z1(2, 2, (3, 3))
        assert sorted(s.angles for s in surfaces) == [(1, 2), (2, 1)]

    @pytest.mark.parametrize("orders", [(2, 2, 2), (3, 2, 4), (2, 5, 3), (4, 4), (3, 3, 3, 2)])
    def test_count_matches_nested_loops(self, orders):
        total = sum(orders) - 2
        for a1 in range(total + 1):
            assert len(enumerate_z1(a1, total - a1, orders)) == naive_z1_count(a1, orders)

    def test_surfaces_validate(self):
        for s in enumerate_z1(3, 2, (3, 2, 2)):
            s.validate()
            s.ribbon().validate({"z1": 3, "z2": 2}, {"p1": 3, "p2": 2, "p3": 2})

    def test_empty_result_is_not_an_error(self):
        assert enumerate_z1(0, 2, (2, 2)) == []

    def test_bad_degree(self):
        with pytest.raises(ValidationError):
            enumerate_z1(1, 1, (2,))


class TestEnumerateZ2:
    def test_no_residueless(self):
        assert len(enumerate_z2(0, (), 1, 1)) == 1

    def test_one_double_pole(self):
        surfaces = enumerate_z2(2, (2,), 1, 1)
        assert len(surfaces) == 1
        assert surfaces[0].angles == (1,)

    def test_triple_pole(self):
        assert len(enumerate_z2(4, (3,), 2, 1)) == 2

    def test_surfaces_validate(self):
        for s in enumerate_z2(6, (2, 3), 2, 1):
            s.validate()
            s.ribbon().validate({"z1": 6}, {"p1": 2, "p2": 3, "q1": 2, "q2": 1})

    def test_bad_degree(self):
        with pytest.raises(ValidationError):
            enumerate_z2(3, (2,), 1, 1)


class TestRibbons:
    def test_cycle_surface_faces(self):
        g = z1_ribbon("z1", "z2", [("p1", 1, 1), ("p2", 2, 1)])
        assert g.edge_count == 2
        assert set(g.faces) == {"p1", "p2"}
        g.validate({"z1": 2, "z2": 1}, {"p1": 2, "p2": 3})

    def test_chain_surface_faces(self):
        g = z2_ribbon("z1", ("q1", 1), [("p1", 1, 1)], ("q2", 1))
        g.validate({"z1": 2}, {"p1": 2, "q1": 1, "q2": 1})

    def test_cycle_surface_needs_a_pole(self):
        with pytest.raises(ValidationError):
            z1_ribbon("z1", "z2", [])


def test_arrangements_cover_orders_and_angles():
    poles = (3, 2, 3)
    found = list(arrangements(poles, (0, 2)))
    # two orders, two angles for each triple pole
    assert len(found) == 2 * 2 * 2
    assert all(len(tau) == len(cvec) == 2 for tau, cvec in found)


class TestBoundaryLevels:
    """Levels of B boundary points are enumerated cycle and chain surfaces."""

    @pytest.mark.parametrize("text", ["1,2 | -2 | -1,-2", "2,4 | -3 | -3 | -1,-1", "0,2 | -2 | -1,-1"])
    def test_type_one_levels(self, text):
        sig = parse_signature(text)
        q1, q2 = sig.multi_blocks[0]
        points = [b for b in enumerate_boundaries(sig) if b.family == "B-I"]
        assert points
        for b in points:
            levels = realize(b)
            node = levels.nodes[0]
            l, kappa = b.l1, b.kappa[0]

            orders = tuple(sig.poles[j] for j in b.tau[l:]) + (kappa + 1,)
            bottom = CycleSurface(
                sig.zeros[0], sig.zeros[1], orders, tuple(range(len(orders))), b.Cvec[l:] + (b.C,),
            )
            assert bottom in enumerate_z1(sig.zeros[0], sig.zeros[1], orders)
            ribbon = bottom.ribbon(pole_labels=[pole_label(j) for j in b.tau[l:]] + [node])
            assert canonical_level(ribbon).code == levels.bottom_canon.code

            residueless = tuple(sig.poles[j] for j in b.tau[:l])
            top = ChainSurface(
                kappa - 1, residueless, sig.poles[q1], sig.poles[q2], tuple(range(l)), b.Cvec[:l],
            )
            assert top in enumerate_z2(kappa - 1, residueless, sig.poles[q1], sig.poles[q2])
            ribbon = top.ribbon(
                zero_label=node,
                pole_labels=[pole_label(j) for j in b.tau[:l]],
                end_labels=(pole_label(q1), pole_label(q2)),
            )
            assert canonical_level(ribbon).code == levels.top_canon.code

    def test_type_three_c_top_level(self):
        sig = parse_signature("3,3 | -6 | -1,-1")
        points = [b for b in enumerate_boundaries(sig) if b.family == "B-IIIc"]
        assert points
        for b in points:
            zt = label_index(b.h[1])
            orders = tuple(sig.poles[j] for j in b.tau[b.l1:b.l2])
            top = CycleSurface(
                b.kappa[0] - 1, sig.zeros[zt], orders, tuple(range(len(orders))), b.Cvec[b.l1:b.l2],
            )
            assert top in enumerate_z1(b.kappa[0] - 1, sig.zeros[zt], orders)
