import csv
import io
import json
import subprocess
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

import pytest

from rankshare.cli import run

GOLDEN = Path(__file__).parent / "golden"
TOWNS = str(resources.files("rankshare") / "data" / "bls_towns.csv")


def cli(*argv):
    """Run the CLI in a fresh interpreter, returning (exit code, stdout, stderr)."""
    proc = subprocess.run([sys.executable, "-m", "rankshare", *argv],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.mark.parametrize("name, argv", [
    ("enumerate_t10_n3.csv", ["enumerate", "--t", "10", "--n", "3"]),
    ("enumerate_t10_n3.json", ["enumerate", "--t", "10", "--n", "3", "--format", "json"]),
    ("expected_n22.csv", ["expected", "--n", "22"]),
    ("expected_n22.json", ["expected", "--n", "22", "--format", "json"]),
    ("fit_towns.csv", ["fit", "--input", TOWNS, "--no-renormalize"]),
    ("fit_towns.json", ["fit", "--input", TOWNS, "--no-renormalize", "--format", "json"]),
])
def test_golden(name, argv):
    code, out, _ = cli(*argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_golden_contents_are_sane():
    rows = list(csv.DictReader(io.StringIO((GOLDEN / "enumerate_t10_n3.csv").read_text())))
    hit = [r for r in rows if r["rank"] == "1" and r["share"] == "7"]
    assert hit[0]["count"] == "12"
    exp = json.loads((GOLDEN / "expected_n22.json").read_text())["expected"]
    for k, v in enumerate(exp, start=1):
        assert v == pytest.approx(float(sum(Fraction(1, i) for i in range(k, 23)) / 22),
                                  rel=1e-11)
    fit = json.loads((GOLDEN / "fit_towns.json").read_text())
    assert fit["observed"][:3] == [0.162, 0.1108, 0.0936]
    assert fit["pearson_r"] > 0.99


@pytest.mark.parametrize("argv", [
    ["pdf", "--n", "5", "--k", "2", "--points", "11"],
    ["cdf", "--n", "4", "--k", "1"],
    ["zipf", "--n", "10"],
    ["table", "--n", "4"],
    ["simulate", "--n", "3", "--samples", "2000", "--seed", "5"],
])
def test_byte_deterministic(argv):
    a, b = cli(*argv), cli(*argv)
    assert a[0] == 0
    assert a == b


def test_csv_json_parity():
    for argv in (["pdf", "--n", "5", "--k", "2", "--points", "7"], ["expected", "--n", "9"]):
        _, c, _ = cli(*argv)
        _, j, _ = cli(*argv, "--format", "json")
        csv_vals = [float(r[-1]) for r in list(csv.reader(io.StringIO(c)))[1:]]
        doc = json.loads(j)
        json_vals = ([p["value"] for p in doc["points"]] if "points" in doc else doc["expected"])
        assert csv_vals == json_vals


def test_pdf_grid_endpoints():
    _, out, _ = cli("pdf", "--n", "3", "--k", "1", "--points", "3")
    lines = out.splitlines()
    assert lines[0] == "S,value"
    assert lines[1].startswith("0.333333333333,")
    assert lines[-1].startswith("1,")


def test_table_json_single_rank():
    _, out, _ = cli("table", "--n", "4", "--k", "2", "--format", "json")
    doc = json.loads(out)
    assert isinstance(doc, dict) and doc["k"] == 2


@pytest.mark.parametrize("argv, code", [
    (["enumerate", "--t", "10"], 2),
    (["enumerate", "--t", "-1", "--n", "3"], 2),
    (["pdf", "--n", "3", "--k", "1", "--points", "1"], 2),
    (["simulate", "--n", "3", "--samples", "10"], 2),
    (["frobnicate"], 2),
    (["pdf", "--n", "3", "--k", "4"], 1),
    (["pdf", "--n", "1", "--k", "1"], 1),
    (["table", "--n", "2"], 1),
    (["fit", "--input", "/nonexistent/file.csv"], 1),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv) == code
    assert capsys.readouterr().err


def test_fit_malformed_input(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("cat,a,b\nx,1,abc\n")
    code, out, err = cli("fit", "--input", str(bad))
    assert code == 1 and out == "" and "abc" in err


def test_fit_from_stdin():
    text = Path(TOWNS).read_text()
    proc = subprocess.run([sys.executable, "-m", "rankshare", "fit", "--input", "-",
                           "--no-renormalize"], input=text, capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "fit_towns.csv").read_text()


def test_out_flag(tmp_path):
    target = tmp_path / "e.csv"
    code, out, _ = cli("expected", "--n", "22", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "expected_n22.csv").read_text()


def test_threads_do_not_change_output(monkeypatch, capsys):
    argv = ["enumerate", "--t", "30", "--n", "5"]
    assert run(argv) == 0
    ref = capsys.readouterr().out
    assert run(argv + ["--threads", "3"]) == 0
    assert capsys.readouterr().out == ref
    monkeypatch.setenv("RANKSHARE_THREADS", "2")
    assert run(argv) == 0
    assert capsys.readouterr().out == ref
    monkeypatch.setenv("RANKSHARE_THREADS", "many")
    assert run(argv) == 1


def test_simulate_threads_deterministic(capsys):
    argv = ["simulate", "--n", "4", "--samples", "150000", "--seed", "1", "--format", "json"]
    assert run(argv) == 0
    a = capsys.readouterr().out
    assert run(argv + ["--threads", "2"]) == 0
    assert capsys.readouterr().out == a
    assert json.loads(a)["means"][3] == pytest.approx(1 / 16, abs=0.003)
