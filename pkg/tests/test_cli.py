import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from lorpoly import io
from lorpoly.cli import main
from lorpoly.polyhedron import Configuration, closure_residual


def write(path, pairs):
    path.write_text(json.dumps({"version": 1, "pairs": [
        {"z": [z.real, z.imag], "w": [w.real, w.imag]} for z, w in pairs]}))
    return str(path)


@pytest.fixture
def sampled(tmp_path):
    p = tmp_path / "s.json"
    assert main(["sample", "-n", "5", "-a", "3.0", "--seed", "11", "-o", str(p)]) == 0
    return p


def test_sample_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["sample", "-n", "6", "-a", "2.0", "--seed", "7", "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())["report"]
    assert rep["rng"] == "numpy.PCG64" and rep["seed"] == 7 and len(rep["faces"]) == 6
    c = io.read_config(a)
    assert closure_residual(c)[1] < 1e-9 and c.total_area() == pytest.approx(2.0, abs=1e-9)


def test_sample_negative_area(tmp_path):
    p = tmp_path / "n.json"
    assert main(["sample", "-n", "4", "-a", "-1.5", "--seed", "1", "-o", str(p)]) == 0
    assert io.read_config(p).total_area() == pytest.approx(-1.5, abs=1e-9)


def test_json_round_trip_bitwise(tmp_path):
    rng = np.random.default_rng(3)
    c = Configuration(rng.standard_normal(4) + 1j * rng.standard_normal(4),
                      rng.standard_normal(4) + 1j * rng.standard_normal(4))
    p = tmp_path / "c.json"
    io.write_config(p, c)
    back = io.read_config(p)
    assert np.array_equal(back.z, c.z) and np.array_equal(back.w, c.w)


def test_decompose(sampled, tmp_path, capsys):
    csv_path = tmp_path / "m.csv"
    assert main(["decompose", str(sampled), "--csv", str(csv_path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["reconstruction_residual"]["value"] < 1e-9
    rows = list(csv.reader(csv_path.open()))
    assert rows[0] == ["i", "j", "M_ij"] and len(rows) == 26
    m = np.array(rep["M"])
    assert float(rows[8][2]) == m[1, 2]


def test_close(tmp_path):
    pairs = [(1 + 0.2j, 0.3 - 0.1j), (0.5j, 1.1), (-0.7, 0.4 + 0.4j), (0.2 - 1j, -0.6j)]
    src = write(tmp_path / "open.json", pairs)
    out, rep = tmp_path / "closed.json", tmp_path / "rep.json"
    assert main(["close", src, "-o", str(out), "--report", str(rep)]) == 0
    assert closure_residual(io.read_config(out))[1] < 1e-10
    assert json.loads(rep.read_text())["closure_residual"]["value"] < 1e-10


def test_exit_not_closed(tmp_path):
    assert main(["decompose", write(tmp_path / "b.json", [(1, 1j), (1, -1j)])]) == 3


def test_exit_zero_area(tmp_path):
    assert main(["decompose", write(tmp_path / "z.json", [(1, 0), (0, -1)])]) == 4


def test_exit_degenerate(tmp_path):
    assert main(["close", write(tmp_path / "d.json", [(1, 0), (2j, 0), (-1, 0)])]) == 5
    assert main(["close", write(tmp_path / "one.json", [(1, 0.5j)])]) == 5


def test_exit_violation_with_tight_tolerance(sampled, monkeypatch, capsys):
    monkeypatch.setenv("LORPOLY_TOLERANCE_SCALE", "1e-30")
    assert main(["decompose", str(sampled)]) == 2


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["sample", "-n", "1", "-a", "1"], ["sample", "-n", "3", "-a", "0"],
    ["algebra-check", "--scope", "quantum", "--cutoff", "2"],
    ["quantum-casimir", "-s", "1", "-m", "0.3", "--cutoff", "20"],
    ["quantum-casimir", "-s", "1", "-m", "0", "--cutoff", "4"],
    ["decompose", "/nonexistent/file.json"],
])
def test_exit_usage(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 64


@pytest.mark.parametrize("doc", [
    {"version": 2, "pairs": [{"z": [1, 0], "w": [0, 0]}]},
    {"version": 1, "pairs": []},
    {"version": 1, "pairs": [{"z": [1, 0]}]},
    {"version": 1, "pairs": [{"z": [1, 0, 0], "w": [0, 0]}]},
    {"version": 1, "pairs": [{"z": ["1", 0], "w": [0, 0]}]},
])
def test_malformed_config(tmp_path, doc):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert main(["decompose", str(p)]) == 64


def test_bad_tolerance_env(sampled, monkeypatch):
    monkeypatch.setenv("LORPOLY_TOLERANCE_SCALE", "abc")
    assert main(["decompose", str(sampled)]) == 64
    monkeypatch.setenv("LORPOLY_TOLERANCE_SCALE", "-1")
    assert main(["decompose", str(sampled)]) == 64


def test_algebra_check_classical(tmp_path, capsys):
    csv_path = tmp_path / "t.csv"
    assert main(["algebra-check", "--csv", str(csv_path)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and rep["classical"]["tolerance"] == 0
    assert len(csv_path.read_text().splitlines()) == len(rep["classical"]["entries"]) + 1


def test_quantum_check(tmp_path):
    rep = tmp_path / "q.json"
    assert main(["quantum-check", "--cutoff", "4", "--report", str(rep)]) == 0
    d = json.loads(rep.read_text())
    assert d["ok"] and d["quantum"]["su11"]["literature_discrepancies"]


def test_quantum_casimir_csv(tmp_path, capsys):
    out, rep = tmp_path / "c.csv", tmp_path / "c.json"
    assert main(["quantum-casimir", "-s", "0", "-m", "0", "--cutoff", "10",
                 "-o", str(out), "--report", str(rep)]) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["n", "re", "im"] and len(rows) == 12
    assert [float(r[1]) for r in rows[1:6]] == [1.0, 0.0, 0.5, 0.0, 0.375]
    assert main(["quantum-casimir", "-s", "1", "-m", "-0.5", "--cutoff", "300"]) == 0
    assert capsys.readouterr().out.startswith("n,re,im\n")


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "lorpoly.cli", "sample", "-n", "3", "-a", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["version"] == 1
