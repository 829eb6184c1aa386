import csv
import io
import json

import pytest

from superspin_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fockstat_suite_passes(capsys):
    code, out, _ = run(capsys, "verify", "fockstat")
    assert code == 0
    assert all(d["pass"] for d in json.loads(out))


def test_failing_suite_exit_one(capsys):
    code, out, _ = run(capsys, "verify", "grassmann")
    ids = {d["check_id"]: d["pass"] for d in json.loads(out)}
    assert code == 1 and not ids["grassmann.intersection_witness"]


@pytest.mark.parametrize("argv", [
    ["verify", "nope"], ["table", "bogus"], ["verify", "fockstat", "--grid", "1"],
    ["verify", "fockstat", "--tol", "-1"], ["verify", "fockstat", "--s0", "2"],
    ["verify", "superspin", "--s0", "1", "--s3", "1"], ["verify", "fockstat", "--format", "xml"], [],
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_unwritable_output(capsys, tmp_path):
    assert run(capsys, "covering", "--out", str(tmp_path / "missing" / "x.json"))[0] == 2
    assert run(capsys, "table", "curvature", "--out", str(tmp_path / "missing" / "x.json"))[0] == 2


def test_deterministic_output(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        run(capsys, "verify", "liealg", "--seed", "7", "--out", str(p))
    assert a.read_bytes() == b.read_bytes()


def test_covering_and_superspinor(capsys):
    assert run(capsys, "covering")[0] == 0
    assert run(capsys, "superspinor-check")[0] == 0
    code, out, _ = run(capsys, "superspinor-check", "--bar", "adjoint")
    assert code == 1 and json.loads(out)[0]["residual"] == pytest.approx(2.0)


def test_limits(capsys):
    code, out, _ = run(capsys, "limits")
    data = json.loads(out)
    assert code == 0 and len(data) == 6


def test_epsilon_kappa_table(capsys):
    code, out, _ = run(capsys, "table", "epsilon-kappa", "--grid", "8")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 8
    r0 = rows[0]
    assert (r0["alpha"], r0["eps00"], r0["eps03"], r0["eps30"], r0["eps33"]) == (0.0, 1.0, 0.0, -0.0, 1.0)
    assert r0["kappa0"] == pytest.approx(0.0, abs=1e-14) and r0["kappa3"] == pytest.approx(0.0, abs=1e-14)


def test_curvature_table_csv(capsys):
    code, out, _ = run(capsys, "table", "curvature", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 100
    assert all(abs(float(r["sectional_curvature"]) - 1.0) < 1e-9 for r in rows)
