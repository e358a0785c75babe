import csv
import json
import math
import subprocess
import sys

import pytest

from discdyn.cli import COMMANDS, main

# fast flag sets covering every subcommand
SMALL_RUNS = {
    ("lorenz", None): ["lorenz", "--steps", "200"],
    ("lorenz", "analyze"): ["lorenz", "analyze"],
    ("poincare", None): ["poincare", "--steps", "5000"],
    ("henon", None): ["henon", "--n", "500"],
    ("henon", "fixed-points"): ["henon", "fixed-points"],
    ("henon", "regimes"): ["henon", "regimes", "--num", "4", "--probe", "500"],
    ("logistic", "diagram"): ["logistic", "diagram", "--num", "5", "--keep", "10"],
    ("logistic", "cascade"): ["logistic", "cascade", "--k-max", "3"],
    ("logistic", "orbits"): ["logistic", "orbits", "--a", "3.83", "--period", "3"],
    ("cantor", None): ["cantor", "--depth", "3"],
    ("cantor", "check"): ["cantor", "check"],
}


def run_to_file(argv, path):
    code = main([*argv, "-o", str(path)])
    return code, path.read_bytes() if path.exists() else b""


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_every_command_is_exercised():
    assert set(SMALL_RUNS) == set(COMMANDS)


@pytest.mark.parametrize("key", list(SMALL_RUNS), ids=lambda k: " ".join(filter(None, k)))
def test_command_runs(key, tmp_path):
    code, data = run_to_file(SMALL_RUNS[key], tmp_path / "out")
    assert code == 0 and data
    assert b"\r" not in data and data.endswith(b"\n")


def test_lorenz_example(tmp_path):
    out = tmp_path / "orbit.csv"
    argv = ["lorenz", "--sigma", "10", "--r", "28", "--b", "2.6667", "--x0", "0", "--y0", "1",
            "--z0", "0", "--dt", "0.01", "--steps", "10000", "-o", str(out)]
    assert main(argv) == 0
    rows = read_csv(out)
    assert rows[0] == ["t", "x", "y", "z"]
    assert len(rows) == 10_002
    assert [float(v) for v in rows[1]] == [0.0, 0.0, 1.0, 0.0]


def test_henon_fixed_points_values(tmp_path):
    out = tmp_path / "fp.csv"
    assert main(["henon", "fixed-points", "--a", "1.4", "--b", "0.3", "-o", str(out)]) == 0
    header, first, second = read_csv(out)
    row = dict(zip(header, first))
    assert abs(float(row["x"]) - 0.631354477089505) < 1e-12
    assert abs(float(row["y"]) - 0.189406343126851) < 1e-12
    assert abs(float(row["lambda1"]) - 0.15594632) < 1e-8
    assert abs(float(row["lambda2"]) + 1.92373886) < 1e-8
    assert row["stability"] == "saddle"


def test_cantor_depth_zero(tmp_path):
    out = tmp_path / "lvl.csv"
    assert main(["cantor", "--a", "5", "--depth", "0", "-o", str(out)]) == 0
    header, *rows = read_csv(out)
    assert header == ["level", "lo", "hi"]
    assert len(rows) == 2
    assert rows[0][:2] == ["0", "0"] and rows[1][0] == "0" and float(rows[1][2]) == 1.0
    assert abs(float(rows[0][2]) - (5 - math.sqrt(5)) / 10) < 1e-15
    assert abs(float(rows[1][1]) - (5 + math.sqrt(5)) / 10) < 1e-15


def test_csv_headers(tmp_path):
    expected = {
        ("poincare", None): ["index", "t", "x", "y", "z"],
        ("henon", None): ["i", "x", "y"],
        ("henon", "regimes"): ["a", "label", "a0", "a1"],
        ("logistic", "diagram"): ["a", "x"],
        ("logistic", "cascade"): ["k", "period", "a_onset"],
        ("logistic", "orbits"): ["cycle", "period", "x", "multiplier", "stability"],
        ("cantor", "check"): ["a", "min_derivative", "holds"],
    }
    for key, header in expected.items():
        out = tmp_path / f"{key[0]}-{key[1]}.csv"
        assert run_to_file(SMALL_RUNS[key], out)[0] == 0
        assert read_csv(out)[0] == header


def test_analyze_json(tmp_path):
    out = tmp_path / "a.json"
    assert main(["lorenz", "analyze", "-o", str(out)]) == 0
    report = json.loads(out.read_text())
    assert abs(report["critical_r"] - 470 / 19) < 1e-12
    assert len(report["equilibria"]) == 3


def test_precision_round_trip(tmp_path):
    from discdyn.lorenz import CANONICAL, lorenz_orbit

    out = tmp_path / "o.csv"
    assert main(["lorenz", "--steps", "300", "-o", str(out)]) == 0
    rows = read_csv(out)[1:]
    orbit = lorenz_orbit(CANONICAL, (0.0, 1.0, 0.0), 0.01, 300)
    for row, s in zip(rows, orbit.samples):
        assert [float(v) for v in row[1:]] == list(s)


def test_lower_precision(tmp_path):
    out = tmp_path / "o.csv"
    assert main(["cantor", "--depth", "0", "--precision", "6", "-o", str(out)]) == 0
    assert read_csv(out)[1][2] == "0.276393"


def test_cantor_check_flags():
    assert main(["cantor", "check", "--a", "4.1", "-o", "-"]) == 0


@pytest.mark.parametrize("argv", [
    [],
    ["nonsense"],
    ["lorenz", "--steps", "many"],
    ["logistic"],
    ["logistic", "orbits", "--a", "3.5"],
    ["cantor", "--precision", "30"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err


@pytest.mark.parametrize("argv,kind", [
    (["henon", "--a", "1.6", "--x0", "0", "--y0", "0", "--n", "1000"], "escape"),
    (["lorenz", "analyze", "--sigma", "2", "--b", "1"], "singular-parameter"),
    (["cantor", "--a", "3.5"], "domain"),
    (["logistic", "orbits", "--a", "3.5", "--period", "20"], "domain"),
])
def test_runtime_errors_exit_1(argv, kind, capsys):
    assert main(argv) == 1
    err = capsys.readouterr().err.strip().splitlines()
    assert len(err) == 1 and err[0].startswith(f"error: {kind}: ")


def test_unwritable_output(tmp_path):
    assert main(["cantor", "check", "-o", str(tmp_path / "missing" / "x.csv")]) == 1


@pytest.mark.parametrize("argv", [[], ["lorenz"], ["lorenz", "analyze"], ["poincare"], ["henon"],
                                  ["henon", "fixed-points"], ["henon", "regimes"], ["logistic"],
                                  ["logistic", "diagram"], ["logistic", "cascade"],
                                  ["logistic", "orbits"], ["cantor"], ["cantor", "check"]])
def test_help(argv, capsys):
    assert main([*argv, "--help"]) == 0
    text = capsys.readouterr().out
    assert "usage:" in text
    if argv:
        assert "--precision" in text or argv == ["logistic"]


def test_module_entry_point(tmp_path):
    out = tmp_path / "c.csv"
    res = subprocess.run([sys.executable, "-m", "discdyn", "cantor", "check", "-o", str(out)],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert read_csv(out)[1][2] == "true"
