import json
import subprocess
import sys

import pytest

from simplex_metrics.cli import main


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def triangle(tmp_path):
    return _write(tmp_path, "tri.json", {"points": [["0", "0"], ["1", "0"], ["0", "1"]]})


def test_volume_from_distances(tmp_path, capsys):
    d = _write(tmp_path, "d.json", {"g": [["0", "9", "16"], ["9", "0", "25"], ["16", "25", "0"]]})
    assert main(["volume", "--distances", d]) == 0
    assert json.loads(capsys.readouterr().out) == {"k": 2, "method": "cm", "vol2": "36"}


def test_volume_both_methods(triangle, capsys):
    assert main(["volume", "--simplex", triangle]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["agree"] is True and out["vol2"] == "1/4"


def test_volume_with_metric(tmp_path, triangle, capsys):
    m = _write(tmp_path, "m.json", {"n": 2, "entries": [["4", "0"], ["0", "1"]]})
    assert main(["volume", "--simplex", triangle, "--metric", m, "--method", "gram"]) == 0
    assert json.loads(capsys.readouterr().out)["vol2"] == "1"


def test_volume_errors(tmp_path, triangle):
    bad = _write(tmp_path, "bad.json", {"points": [[0.5, "1"]]})
    ragged = _write(tmp_path, "r.json", {"points": [["0", "0"], ["1"]]})
    m3 = _write(tmp_path, "m3.json", {"n": 3, "entries": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]})
    lin = _write(tmp_path, "lin.json", {"n": 2, "entries": [[{"const": "1", "linear": ["1", "0"]}, "0"], ["0", "1"]]})
    garbage = tmp_path / "g.json"
    garbage.write_text("{not json")
    assert main(["volume", "--simplex", bad]) == 1
    assert main(["volume", "--simplex", str(garbage)]) == 1
    assert main(["volume", "--simplex", str(tmp_path / "missing.json")]) == 1
    assert main(["volume", "--simplex", ragged]) == 2
    assert main(["volume", "--simplex", triangle, "--metric", m3]) == 2
    assert main(["volume", "--simplex", triangle, "--metric", lin]) == 1
    assert main(["volume"]) == 1
    assert main(["bogus"]) == 1


def test_factors(capsys):
    assert main(["factors", "--max-k", "4"]) == 0
    rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()]
    assert rows == [["0", "-1"], ["1", "1/2"], ["2", "-1/16"], ["3", "1/288"], ["4", "-1/9216"]]


def test_compare_is_deterministic(capsys):
    assert main(["compare", "--trials", "100", "--max-k", "3", "--max-n", "4", "--seed", "5"]) == 0
    first = capsys.readouterr().out
    assert main(["compare", "--trials", "100", "--max-k", "3", "--max-n", "4", "--seed", "5"]) == 0
    assert capsys.readouterr().out == first
    assert json.loads(first)["passed"] == 100


def test_compare_degenerate_simplex(tmp_path, capsys):
    s = _write(tmp_path, "deg.json", {"points": [["0", "0"], ["1", "1"], ["2", "2"]]})
    assert main(["compare", "--trials", "1", "--simplex", s]) == 0
    assert json.loads(capsys.readouterr().out)["passed"] == 1


def test_compare_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("SIMPLEX_METRICS_SEED", "11")
    assert main(["compare", "--trials", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 11


def test_verify_only(capsys):
    assert main(["verify", "--only", "check_thin_examples"]) == 0
    (line,) = capsys.readouterr().out.splitlines()
    report = json.loads(line)
    assert report["status"] == "pass"
    assert {s["name"] for s in report["subresults"]} >= {"x2y_eq_xy2", "x2y_needs_thinness", "whisker_is_thin"}


def test_verify_unknown_check():
    assert main(["verify", "--only", "nonexistent"]) == 1


def test_module_entry_point(triangle):
    out = subprocess.run([sys.executable, "-m", "simplex_metrics", "volume", "--simplex", triangle],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["vol2"] == "1/4"
