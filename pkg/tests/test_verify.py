import pytest

from core.blocks import enumerate_z1, enumerate_z2
from core.models import Family, UnsupportedFamily
from core.settings import DEFAULT_SETTINGS
from core.signature import classify_one_dim, parse_signature
from core.verify import (
    configure_engine,
    family_signatures,
    predicted_components,
    probe_conjecture,
    probe_stratum,
    sweep,
    verify_signature_text,
    verify_stratum,
)


class TestPredictions:
    def test_b_no_non_hyperelliptic(self):
        p = predicted_components(parse_signature("1,1 | -2 | -1,-1"))
        assert p.hyperelliptic == 1
        assert p.non_hyperelliptic_total == 0
        assert p.exception

    def test_b_missing_top_index(self):
        p = predicted_components(parse_signature("2,2 | -4 | -1,-1"))
        assert p.hyperelliptic == 1
        assert p.modulus == 2
        assert p.by_index == {1: 1}

    def test_b_non_simple_pair_exception_is_flagged(self):
        p = predicted_components(parse_signature("2,2 | -2 | -2,-2"))
        assert (p.hyperelliptic, p.non_hyperelliptic_total) == (1, 0)
        assert p.flags

    def test_d_two_spins(self):
        p = predicted_components(parse_signature("6 | -4 | -1,-1 | -1,-1"))
        assert p.hyperelliptic == 1
        assert p.by_spin == {0: 1, 1: 1}
        assert p.total == 3

    def test_d_parity_not_asserted(self):
        p = predicted_components(parse_signature("4 | -2 | -1,-1 | -1,-1"))
        assert p.by_spin is None
        assert p.non_hyperelliptic_total == 1
        assert p.flags

    def test_d_index_exception(self):
        p = predicted_components(parse_signature("4 | -1,-1 | -2,-2"))
        assert p.by_index == {1: 1}

    def test_c_connected(self):
        p = predicted_components(parse_signature("1 | -1,-1,-1"))
        assert p.total == 1

    def test_a_has_no_prediction(self):
        with pytest.raises(UnsupportedFamily):
            predicted_components(parse_signature("1,1,1 | -5"))

    def test_b_marked_point_counts_chain_surfaces(self):
        p = predicted_components(parse_signature("0,2 | -2 | -1,-1"))
        assert (p.hyperelliptic, p.non_hyperelliptic_total) == (0, 1)
        assert p.by_index is None
        p = predicted_components(parse_signature("0,4 | -3 | -2,-1"))
        assert p.total == len(enumerate_z2(4, [3], 2, 1)) == 2

    def test_a_marked_point_counts_cycle_surfaces(self):
        p = predicted_components(parse_signature("0,1,2 | -5"))
        assert p.total == len(enumerate_z1(1, 2, [5])) == 1
        p = predicted_components(parse_signature("0,1,3 | -3 | -3"))
        assert p.total == len(enumerate_z1(1, 3, [3, 3])) == 1


# (signature, components, hyperelliptic, index or spin breakdown)
ACCEPTANCE = [
    ("2 | -1,-1 | -1,-1", 1, 1, {}),
    ("4 | -2 | -1,-1 | -1,-1", 2, 1, {}),
    ("6 | -4 | -1,-1 | -1,-1", 3, 1, {"by_spin": {"0": 1, "1": 1}}),
    ("5 | -3 | -1,-1 | -1,-1", 1, 0, {}),
    ("4 | -1,-1 | -2,-2", 2, 1, {"by_index": {"1": 1}}),
    ("1,1 | -2 | -1,-1", 1, 1, {}),
    ("2,2 | -4 | -1,-1", 2, 1, {"by_index": {"1": 1}}),
    ("1,3 | -4 | -1,-1", 1, 0, {"by_index": {"1": 1}}),
    ("1,2 | -2 | -1,-2", 1, 0, {}),
    ("2,2 | -2 | -2,-2", 1, 1, {}),
    ("1 | -1,-1,-1", 1, 0, {}),
    ("0,2 | -2 | -1,-1", 1, 0, {}),
]


class TestVerifyStratum:
    @pytest.mark.parametrize("text,components,hyperelliptic,breakdown", ACCEPTANCE)
    def test_acceptance(self, text, components, hyperelliptic, breakdown):
        record = verify_stratum(parse_signature(text))
        assert record.verdict == "match", record.details
        assert record.computed["components"] == components
        assert record.computed["hyperelliptic"] == hyperelliptic
        for key, value in breakdown.items():
            assert record.computed[key] == value

    def test_parity_reported_for_the_exception(self):
        record = verify_stratum(parse_signature("4 | -2 | -1,-1 | -1,-1"))
        assert record.computed["by_spin"]
        assert "spin parity reported, not asserted" in record.flags

    def test_deterministic(self):
        sig = parse_signature("4 | -1,-1 | -2,-2")
        assert verify_stratum(sig).to_dict() == verify_stratum(sig).to_dict()

    def test_records_settings_and_closure(self):
        record = verify_stratum(parse_signature("1,1 | -2 | -1,-1"))
        assert record.computed["settings"] == {"admit_empty_top_type_one": True}
        assert record.computed["closure"]["closed"]
        assert record.computed["closure"]["empty_top_type_one"] >= 1

    def test_without_empty_top_type_one(self):
        configure_engine({**DEFAULT_SETTINGS, "admit_empty_top_type_one": False})
        try:
            record = verify_stratum(parse_signature("1,1 | -2 | -1,-1"))
        finally:
            configure_engine(DEFAULT_SETTINGS)
        assert record.computed["settings"] == {"admit_empty_top_type_one": False}
        closure = record.computed["closure"]
        if closure["closed"]:
            assert closure["empty_top_type_one"] == 0
        else:
            assert record.verdict == "mismatch"
            assert closure["reason"]
            assert any("does not close" in d for d in record.details)

    def test_settings_restored(self):
        record = verify_stratum(parse_signature("1,1 | -2 | -1,-1"))
        assert record.verdict == "match"
        assert record.computed["settings"]["admit_empty_top_type_one"] is True

    def test_a_is_not_verified(self):
        with pytest.raises(UnsupportedFamily):
            verify_stratum(parse_signature("1,1,1 | -5"))

    def test_text_entry_point(self):
        record = verify_signature_text("1 | -1,-1,-1")
        assert record.signature == "1 | -1,-1,-1"
        assert record.verdict == "match"


class TestFamilySignatures:
    def test_smallest_c(self):
        assert [s.render() for s in family_signatures(Family.C, 3)] == ["1 | -1,-1,-1"]

    def test_b_up_to_four(self):
        found = {s.render() for s in family_signatures(Family.B, 4)}
        assert found == {
            "0,1 | -1,-2",
            "0,2 | -1,-3",
            "1,1 | -1,-3",
            "0,2 | -2,-2",
            "1,1 | -2,-2",
            "0,2 | -2 | -1,-1",
            "1,1 | -2 | -1,-1",
        }

    def test_family_membership(self):
        for family in (Family.A, Family.B, Family.C, Family.D):
            for s in family_signatures(family, 7):
                assert classify_one_dim(s) == family
                assert all(a >= 0 for a in s.zeros)
                assert sum(1 for a in s.zeros if a == 0) <= 1
                assert sum(s.poles) <= 7

    def test_empty_range(self):
        assert family_signatures(Family.D, 0) == []


class TestSweep:
    def test_empty_report(self):
        report = sweep(Family.C, 0)
        assert report.records == []
        assert report.ok
        assert report.to_dict() == {"family": "C", "bounds": {"max_pole_sum": 0}, "strata": []}

    def test_c_connected(self):
        report = sweep(Family.C, 6)
        assert report.records
        assert report.ok, [r.to_dict() for r in report.mismatches]
        assert all(r.computed["components"] == 1 for r in report.records)

    def test_d_matches(self):
        report = sweep(Family.D, 6)
        assert report.ok, [r.to_dict() for r in report.mismatches]

    def test_b_matches(self):
        report = sweep(Family.B, 5)
        assert report.ok, [r.to_dict() for r in report.mismatches]

    def test_a_cannot_be_verified(self):
        with pytest.raises(UnsupportedFamily):
            sweep(Family.A, 5)


class TestProbe:
    def test_probe_reports_every_stratum(self):
        report = probe_conjecture(6)
        expected = [s.render() for s in family_signatures(Family.A, 6)]
        assert [r.signature for r in report.records] == expected
        for r in report.records:
            assert r.verdict == "probe"
            assert r.computed["components"] >= 1
            if r.predicted:
                assert bool(r.flags) == (r.computed["components"] != r.predicted["total"])
            else:
                assert bool(r.flags) == (r.computed["components"] > 1)

    def test_probe_is_deterministic(self):
        assert probe_conjecture(5).to_dict() == probe_conjecture(5).to_dict()

    def test_probe_needs_a(self):
        with pytest.raises(UnsupportedFamily):
            probe_stratum(parse_signature("1 | -1,-1,-1"))

    def test_conjecture_run_covers_marked_points(self):
        report = probe_conjecture(5)
        marked = [r for r in report.records if r.signature.startswith("0,")]
        assert marked
        for r in marked:
            assert r.predicted["total"] >= 1
            assert r.computed["closure"]["closed"]


@pytest.mark.slow
class TestLargeSweeps:
    """Every B, C and D stratum with total pole order up to ten."""

    @pytest.mark.parametrize("family", [Family.B, Family.C, Family.D])
    def test_no_mismatches(self, family):
        report = sweep(family, 10, jobs=4)
        assert report.records
        assert not report.mismatches, [r.to_dict() for r in report.mismatches]
        assert report.ok
