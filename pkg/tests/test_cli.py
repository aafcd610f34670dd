import csv
import io
import json
import math
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gapprob.cli import parse_grid, run
from gapprob.errors import DomainError

ROUTES = {"toeplitz", "fredholm", "rh-model", "painleve", "constants"}


def _run(argv):
    out = io.StringIO()
    code = run(argv, out)
    return code, out.getvalue()


def _records(text):
    return [json.loads(line) for line in text.splitlines()]


def _check_schema(rec):
    assert set(rec) == {"command", "inputs", "outputs", "provenance"}
    assert set(rec["provenance"]) == set(rec["outputs"])
    assert set(rec["provenance"].values()) <= ROUTES


def test_constants_record():
    code, text = _run(["constants"])
    assert code == 0
    (rec,) = _records(text)
    _check_schema(rec)
    assert rec["outputs"]["zeta_prime_minus1"] == pytest.approx(-0.1654211437, abs=1e-10)
    assert rec["outputs"]["c0"] == pytest.approx(-0.4385011, abs=1e-7)


def test_toeplitz_log():
    code, text = _run(["toeplitz", "--n", "1", "--alpha", "1.5707963", "--log"])
    (rec,) = _records(text)
    assert code == 0
    assert rec["outputs"]["log_det"] == pytest.approx(math.log(0.5), abs=1e-7)
    assert "det" not in rec["outputs"]


def test_toeplitz_beta_adds_small_beta_route():
    code, text = _run(["toeplitz", "--n", "1", "--beta", "0.2"])
    (rec,) = _records(text)
    assert rec["outputs"]["small_beta_log_det"] == pytest.approx(rec["outputs"]["log_det"], abs=1e-12)


@pytest.mark.parametrize(
    "argv",
    [
        ["fredholm", "--s", "1", "--n", "200"],
        ["delta", "--n", "10", "--alpha", "1.5"],
        ["theta", "--n", "20", "--alpha", "1.2"],
        ["painleve", "--n", "6", "--alpha", "1.8"],
        ["widom-fit", "--n", "50,100", "--alpha", "1.2"],
        ["dyson-fit", "--s", "3,6"],
        ["dinteg", "--n", "4", "--alpha", "1.0", "--quad-order", "8"],
        ["sweep", "--quantity", "first_derivative_law", "--n", "10:20:x2", "--alpha", "1.0"],
    ],
)
def test_subcommands_emit_valid_records(argv):
    code, text = _run(argv)
    assert code == 0
    for rec in _records(text):
        _check_schema(rec)
        assert all(isinstance(v, (int, float, bool)) for v in rec["outputs"].values())


def test_selftest_passes():
    code, text = _run(["selftest"])
    assert code == 0
    recs = _records(text)
    assert len(recs) >= 10 and all(r["outputs"]["passed"] for r in recs)


def test_sweep_order_and_determinism():
    argv = ["sweep", "--n", "10:40:x2", "--alpha", "0.4:1.2:+0.4"]
    _, serial = _run(argv)
    _, parallel = _run(argv + ["--jobs", "3"])
    assert serial == parallel
    recs = _records(serial)
    assert [(r["inputs"]["n"], round(r["inputs"]["alpha"], 12)) for r in recs] == [
        (n, a) for n in (10, 20, 40) for a in (0.4, 0.8, 1.2)
    ]


def test_csv_format():
    code, text = _run(["sweep", "--quantity", "theta", "--n", "10,20", "--alpha", "1.0", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 2
    assert "outputs.theta" in rows[0] and rows[0]["provenance.theta"] == "toeplitz"


@pytest.mark.parametrize(
    "argv",
    [
        ["toeplitz", "--n", "0", "--alpha", "1"],
        ["toeplitz", "--n", "3", "--alpha", "4"],
        ["toeplitz", "--n", "3", "--alpha", "0"],
        ["toeplitz", "--n", "2.5", "--alpha", "1"],
        ["toeplitz", "--n", "3", "--alpha", "1", "--beta", "1"],
        ["toeplitz", "--n", "3"],
        ["fredholm", "--s", "-1"],
        ["fredholm", "--s", "1", "--gamma", "2"],
        ["toeplitz", "--n", "3", "--alpha", "1", "--digits", "10"],
        ["toeplitz", "--n", "3", "--alpha", "1", "--bogus"],
        ["nope"],
        ["sweep", "--n", "10:40:*2", "--alpha", "1"],
    ],
)
def test_validation_errors_exit_2(argv, capsys):
    code, text = _run(argv)
    assert code == 2 and text == ""
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and err.startswith("gapprob: error:")


def test_numerical_fault_exit_3(capsys):
    code, _ = _run(["fredholm", "--s", "12", "--quad-order", "5"])
    assert code == 3
    assert capsys.readouterr().err.count("\n") == 1


def test_console_entry_point_deterministic():
    cmd = [sys.executable, "-m", "gapprob", "delta", "--n", "12", "--alpha", "1.1"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and a.endswith("\n")


def test_parse_grid_examples():
    assert parse_grid("50:400:x2") == [50, 100, 200, 400]
    assert parse_grid("0.4:2.8:+0.4") == pytest.approx([0.4, 0.8, 1.2, 1.6, 2.0, 2.4, 2.8])
    assert parse_grid("1,2.5") == [1.0, 2.5]
    assert parse_grid("3") == [3.0]
    for bad in ("1:2", "1:5:x1", "1:5:+0", "1:5:y2", "0:5:x2"):
        with pytest.raises(DomainError):
            parse_grid(bad)


@given(st.integers(1, 50), st.integers(1, 20), st.integers(1, 10))
def test_parse_grid_arithmetic(start, count, inc):
    stop = start + (count - 1) * inc
    assert parse_grid(f"{start}:{stop}:+{inc}") == [start + k * inc for k in range(count)]


@given(st.integers(1, 50), st.integers(0, 6))
def test_parse_grid_geometric(start, k):
    assert parse_grid(f"{start}:{start * 2**k}:x2") == [start * 2**j for j in range(k + 1)]
