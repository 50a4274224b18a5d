import json

import pytest
from click.testing import CliRunner

from main import EXIT_INPUT_ERROR, cli


@pytest.fixture
def run(tmp_path):
    runner = CliRunner()
    settings = tmp_path / "settings.json"

    def invoke(*args):
        return runner.invoke(cli, ["--settings", str(settings), *args])

    return invoke


def test_dim(run):
    result = run("dim", "1,1 | -2 | -1,-1")
    assert result.exit_code == 0
    assert result.output.splitlines() == ["dimension: 1", "family: B"]


def test_invalid_signature_is_input_error(run):
    result = run("dim", "3 | -1,-2")
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "invalid signature" in result.output


def test_boundaries_json(run):
    result = run("boundaries", "1 | -1,-1,-1", "--json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["signature"] == "1 | -1,-1,-1"
    assert len(data["boundaries"]) == 3


def test_boundaries_of_unsupported_stratum(run):
    result = run("boundaries", "2 | -1,-1,-1,-1")
    assert result.exit_code == EXIT_INPUT_ERROR


def test_net_exports(run, tmp_path):
    dot, js = tmp_path / "net.dot", tmp_path / "net.json"
    result = run("net", "1 | -1,-1,-1", "--dot", str(dot), "--json", str(js))
    assert result.exit_code == 0
    assert "3 vertices, 3 arcs, 1 component(s)" in result.output
    assert dot.read_text(encoding="utf-8").startswith("graph net {")
    assert json.loads(js.read_text(encoding="utf-8"))["components"] == [[0, 1, 2]]


def test_components(run):
    result = run("components", "4 | -1,-1 | -2,-2", "--json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert len(data["components"]) == 2
    assert sum(c["hyperelliptic"] for c in data["components"]) == 1


def test_components_text(run):
    result = run("components", "1 | -1,-1,-1")
    assert result.exit_code == 0
    assert "1 component(s)" in result.output


def test_verify_writes_report(run, tmp_path):
    report = tmp_path / "report.json"
    result = run("verify", "--family", "C", "--max-pole-sum", "4", "--report", str(report))
    assert result.exit_code == 0, result.output
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["family"] == "C"
    assert data["bounds"] == {"max_pole_sum": 4}
    assert data["strata"]
    for entry in data["strata"]:
        assert {"signature", "verdict", "computed", "predicted"} <= set(entry)
        assert entry["verdict"] == "match"


def test_verify_rejects_family_a(run):
    result = run("verify", "--family", "A", "--max-pole-sum", "4")
    assert result.exit_code == EXIT_INPUT_ERROR


def test_verify_stratum(run):
    result = run("verify-stratum", "2,2 | -4 | -1,-1")
    assert result.exit_code == 0
    assert json.loads(result.output)["verdict"] == "match"


def test_probe_conjecture(run):
    result = run("probe-conjecture", "--max-pole-sum", "5")
    assert "1,1,1 | -5" in result.output
    assert result.exit_code in (0, 1)


def test_families(run):
    result = run("families")
    assert result.exit_code == 0
    assert [line.split()[0] for line in result.output.splitlines()] == ["A", "B", "C", "D"]


def test_settings_write(tmp_path):
    path = tmp_path / "atlas.json"
    result = CliRunner().invoke(cli, ["--settings", str(path), "settings", "--write"])
    assert result.exit_code == 0
    assert json.loads(path.read_text(encoding="utf-8"))["max_parallel_jobs"] == 1
