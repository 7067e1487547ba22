import json

import pytest

from signless_ktrees.cli import run
from signless_ktrees.formats import from_graph6, from_json
from signless_ktrees.graph import is_isomorphic
from signless_ktrees.ktree import make_named


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_families_json(capsys):
    code, out, _ = call(capsys, "families", "--family", "g2", "--n", "9", "--k", "3", "--format", "json")
    assert code == 0
    assert is_isomorphic(from_json(out), make_named("g2", 9, 3).graph)


def test_enumerate_count(capsys):
    assert call(capsys, "enumerate", "--n", "8", "--k", "2", "--count-only")[1].strip() == "39"


def test_enumerate_graph6_roundtrip(capsys):
    code, out, _ = call(capsys, "enumerate", "--n", "7", "--k", "2", "--format", "graph6")
    lines = out.split()
    assert code == 0 and len(lines) == 12
    code, out2, _ = call(capsys, "enumerate", "--n", "7", "--k", "2")
    for g6, js in zip(lines, out2.splitlines()):
        assert is_isomorphic(from_graph6(g6), from_json(js))


def test_stats_spectrum_climb(capsys, tmp_path):
    path = tmp_path / "g.json"
    _, out, _ = call(capsys, "families", "--family", "g1", "--n", "7", "--k", "2")
    path.write_text(out)
    code, out, _ = call(capsys, "stats", "--input", str(path), "--k", "2")
    assert code == 0 and json.loads(out)["l"] == 3
    code, out, _ = call(capsys, "spectrum", "--input", str(path), "--full")
    data = json.loads(out)
    assert len(data["eigenvalues"]) == 7 and "perron" in data
    assert all(len(repr(x).replace(".", "").lstrip("0")) <= 13 for x in data["eigenvalues"])
    code, out, _ = call(capsys, "climb", "--input", str(path), "--k", "2", "--trace")
    data = json.loads(out)
    assert code == 0 and data["steps"][-1]["S1"] == 5 and data["moves"]


def test_verify_exit_codes(capsys, tmp_path, monkeypatch):
    report = tmp_path / "r.json"
    code, out, _ = call(capsys, "verify", "--k-min", "1", "--k-max", "2", "--n-max", "8", "--report", str(report))
    assert code == 0 and "overall: pass" in out
    assert json.loads(report.read_text())[0]["tool_version"]
    monkeypatch.setenv("KTREE_GAP_TOL", "5")
    code, out, _ = call(capsys, "verify", "--k-min", "1", "--k-max", "1", "--n-max", "6")
    assert code == 3


def test_counterexample_cli(capsys):
    code, out, _ = call(capsys, "counterexample", "--k", "1", "--trials", "1000", "--seed", "42")
    data = json.loads(out)
    assert code == 0
    assert abs(data["hand_witness"]["violation"] - 0.8) < 1e-12
    assert data["equality_case"]["contradicts_equality_clause"]
    assert data["violation"] >= 0.8
    assert call(capsys, "counterexample", "--trials", "1000")[1] == out


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["families", "--family", "g9", "--n", "5", "--k", "1"],
        ["families", "--family", "g4", "--n", "6", "--k", "1"],
        ["enumerate", "--n", "30", "--k", "2"],
        ["enumerate", "--n", "0", "--k", "2"],
        ["stats", "--input", "/nonexistent.json", "--k", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    assert call(capsys, *argv)[0] == 1


def test_not_a_ktree_is_usage_error(capsys, tmp_path):
    path = tmp_path / "c4.json"
    path.write_text('{"n":4,"edges":[[0,1],[1,2],[2,3],[0,3]]}')
    assert call(capsys, "climb", "--input", str(path), "--k", "1")[0] == 1
