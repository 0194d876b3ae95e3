import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from biunivalent.cli import run
from biunivalent.series import NormalizedFunction, load, save

CLASS = ["--gamma", "1,0", "--lambda", "0", "--beta", "0", "--m", "2", "--a", "1", "--b", "1", "--c", "1"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def ok(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return out


@pytest.fixture
def fn_file(tmp_path):
    path = tmp_path / "f.json"
    save(NormalizedFunction.from_taylor([0.2 - 0.1j, 0.05j, 0.01], 8), path)
    return str(path)


def test_phi_example():
    doc = json.loads(ok("phi", "--a", "1", "--b", "2", "--c", "3", "--n", "5"))
    assert np.allclose(doc["phi"], [2 / (n + 1) for n in range(1, 6)], rtol=1e-15)
    rows = list(csv.reader(io.StringIO(ok("phi", "--n", "3", "--format", "csv"))))
    assert rows[0] == ["n", "phi"] and len(rows) == 4


def test_f21():
    doc = json.loads(ok("f21", "--a", "1", "--b", "2", "--c", "3", "--order", "4"))
    assert doc["order"] == 4
    assert doc["coeffs"][2] == [0.5, 0.0]


def test_bound_example():
    doc = json.loads(ok("bound", "--class", "s", *CLASS))
    assert doc["a2_bound"] == pytest.approx(0.816496580927726, rel=1e-12)
    assert doc["a3_bound"] == pytest.approx(2 / 3, rel=1e-12)


@pytest.mark.parametrize("kind,cor,lam", [("s", "s1", "1"), ("s", "h0", "0"), ("k", "k1", "1"), ("k", "q0", "0")])
def test_bound_corollary_agrees(kind, cor, lam):
    flags = ["--gamma", "0.5,0.5", "--beta", "0.3", "--m", "3", "--a", "1", "--b", "2", "--c", "3"]
    plain = json.loads(ok("bound", "--class", kind, "--lambda", lam, *flags))
    special = json.loads(ok("bound", "--class", kind, "--corollary", cor, *flags))
    for key in ("a2_bound", "a3_bound"):
        assert special[key] == pytest.approx(plain[key], rel=1e-12)
    assert special["a2_branches"] == pytest.approx(plain["a2_branches"], rel=1e-12)


def test_bound_corollary_conflicts():
    assert call("bound", "--class", "k", "--corollary", "s1", *CLASS)[0] == 2
    code, _, err = call("bound", "--class", "s", "--corollary", "s1", *CLASS)
    assert code == 2 and "--lambda" in err


def test_verify_example():
    doc = json.loads(ok("verify", "--class", "k", *CLASS, "--samples", "100000", "--seed", "42"))
    assert 0.995 <= doc["a2_ratio"] <= 1.0
    assert doc["dominated"]


def test_verify_is_deterministic():
    argv = ("verify", "--class", "s", *CLASS, "--samples", "10000", "--seed", "7")
    assert ok(*argv) == ok(*argv)


def test_verify_grid_conflict():
    code, _, err = call("verify", "--class", "s", "--grid", "--lambda", "0")
    assert code == 2 and "lam" in err


def test_apply_identity_round_trip(tmp_path, fn_file):
    once = tmp_path / "once.json"
    once.write_text(ok("apply", "--op", "hohlov", "--input", fn_file, "--a", "2.5", "--b", "1", "--c", "2.5"))
    twice = ok("apply", "--op", "hohlov", "--input", str(once), "--a", "2.5", "--b", "1", "--c", "2.5")
    assert np.array_equal(load(once).coeffs, load(fn_file).coeffs)
    assert twice == once.read_text()


def test_apply_named(fn_file):
    f = load(fn_file)
    lib = json.loads(ok("apply", "--op", "libera", "--input", fn_file))
    ber = json.loads(ok("apply", "--op", "bernardi", "--delta", "1", "--input", fn_file))
    assert np.allclose(lib["coeffs"], ber["coeffs"], rtol=1e-15)
    alex = json.loads(ok("apply", "--op", "alexander", "--input", fn_file))
    assert complex(*alex["coeffs"][3]) == pytest.approx(f.coeffs[3] / 3)
    cs = json.loads(ok("apply", "--op", "carlson", "--a", "2", "--c", "5", "--input", fn_file))
    assert complex(*cs["coeffs"][2]) == pytest.approx(f.coeffs[2] * 2 / 5)


def test_apply_usage_errors(fn_file):
    assert call("apply", "--op", "bernardi", "--input", fn_file)[0] == 2
    assert call("apply", "--op", "libera", "--a", "2", "--input", fn_file)[0] == 2
    assert call("apply", "--op", "libera", "--delta", "2", "--input", fn_file)[0] == 2
    assert call("apply", "--op", "carlson", "--a", "2", "--input", fn_file)[0] == 2
    assert call("apply", "--op", "libera", "--input", "/nonexistent.json")[0] == 2


def test_revert(fn_file):
    doc = json.loads(ok("revert", "--input", fn_file))
    a2 = load(fn_file).coeffs[2]
    assert complex(*doc["coeffs"][2]) == pytest.approx(-a2)


def test_transform(fn_file):
    f = load(fn_file)
    doc = json.loads(ok("transform", "--class", "s", "--input", fn_file, *CLASS))
    assert complex(*doc["coeffs"][1]) == pytest.approx(2 * f.coeffs[2])
    inv = json.loads(ok("transform", "--class", "s", "--input", fn_file, *CLASS, "--inverse"))
    assert complex(*inv["coeffs"][1]) == pytest.approx(-2 * f.coeffs[2])


def test_membership(fn_file):
    doc = json.loads(ok("membership", "--class", "s", "--input", fn_file, *CLASS, "--radii", "0.5,0.9", "--grid", "512"))
    assert doc["radii"] == [0.5, 0.9] and doc["passed"] is True
    # the k-type inverse transform of the same function leaves P_2 at r = 0.9
    doc = json.loads(ok("membership", "--class", "k", "--input", fn_file, *CLASS, "--radii", "0.5,0.9", "--grid", "512"))
    assert doc["per_radius"] == [True, False] and doc["passed"] is False
    assert call("membership", "--class", "k", "--input", fn_file, *CLASS, "--radii", "0.5,1.2")[0] == 2
    assert call("membership", "--class", "k", "--input", fn_file, *CLASS, "--grid", "8")[0] == 2


def test_sweep_csv():
    out = ok("sweep", "--class", "s", "--vary", "lambda", "--from", "0", "--to", "1", "--steps", "5",
             "--gamma", "1,0", "--a", "1", "--b", "1", "--c", "1")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["lambda", "a2_branch0", "a2_branch1"]
    assert len(rows) == 6
    assert float(rows[1][3]) == pytest.approx(math.sqrt(2 / 3), rel=1e-12)
    assert float(rows[-1][3]) == pytest.approx(math.sqrt(2), rel=1e-12)


def test_sweep_errors():
    base = ["sweep", "--class", "s", "--gamma", "1,0", "--from", "0", "--to", "2", "--steps", "3"]
    assert call(*base, "--vary", "lambda")[0] == 2
    assert call(*base, "--vary", "m", "--lambda", "0.5", "--m", "3")[0] == 2


def test_validation_exit_codes():
    assert call("bound", "--class", "s", *CLASS[:2], "--lambda", "2")[0] == 2
    assert call("bound", "--class", "s", "--gamma", "0,0", "--lambda", "0")[0] == 2
    assert call("bound", "--class", "s", "--lambda", "0")[0] == 2
    assert call("bound", "--class", "s", "--gamma", "1,0", "--lambda", "0", "--beta", "1")[0] == 2
    assert call("phi", "--a", "-1", "--n", "3")[0] == 2
    assert call("nonsense")[0] == 2


def test_computation_error_exit_code():
    code, _, err = call("phi", "--a", "1e200", "--b", "1e200", "--c", "1", "--n", "5")
    assert code == 1 and "overflow" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "biunivalent", "phi", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"phi": [1.0, 1.0]}
