import io
import json
import subprocess
import sys

import pytest

from rotadrop.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_type_i():
    code, out, _ = run("classify", "--a", "1", "--b", "1")
    assert code == 0
    d = json.loads(out)
    assert d["type"] == "TypeI"
    assert d["c0"] == pytest.approx(1.1795, abs=1e-4)
    assert d["r1"] is None and d["flipped"] is False


@pytest.mark.parametrize("a, b, kind", [("1", "1", "TypeI"), ("-1", "4", "TypeIIa"),
                                        ("-1", "1.2", "TypeIIb"), ("-1", "2", "TypeIIb"),
                                        ("0", "1", "CMC")])
def test_figure_pairs_end_to_end(a, b, kind, tmp_path):
    assert json.loads(run("classify", "--a", a, "--b", b)[1])["type"] == kind
    assert run("report", "--a", a, "--b", b)[0] == 0
    assert run("verify", "--a", a, "--b", b)[0] == 0
    code, out, _ = run("mesh", "--a", a, "--b", b, "--out", str(tmp_path / "m.obj"),
                       "--n-theta", "16", "--n-s", "16")
    assert code == 0 and (tmp_path / "m.obj").exists()
    assert set(json.loads(out)) >= {"max", "mean", "n_interior"}


def test_classify_flip_and_first_integral():
    d = json.loads(run("classify", "--a", "1", "--b", "-1")[1])
    assert d["flipped"] is True and d["type"] == "TypeIIb"
    d = json.loads(run("classify", "--a", "0", "--b", "0", "--c", "2", "--d", "1")[1])
    assert d["first_integral"] == 0.5
    code, _, err = run("classify", "--a", "1", "--b", "1", "--d", "1")
    assert code == 2 and json.loads(err)["error"] == "usage"


def test_verify_sphere():
    code, out, _ = run("verify", "--a", "0", "--b", "1")
    assert code == 0
    checks = json.loads(out)
    assert isinstance(checks, list)
    assert all(c["status"] in ("pass", "equality", "skipped") for c in checks)


def test_verify_type_iia_gates():
    code, out, _ = run("verify", "--a", "-1", "--b", "4")
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out)}
    assert checks["sandwich_upper"]["status"] == "skipped"
    assert checks["heinz"]["passed"]
    assert all(c["passed"] for n, c in checks.items() if n.startswith("flux"))


def test_verify_failure_exit(monkeypatch):
    # a tolerance below rounding turns the sphere's equalities into failures
    monkeypatch.setenv("ROTADROP_TOL", "-1")
    code, out, _ = run("verify", "--a", "0", "--b", "1")
    assert code == 1


def test_solve_csv_and_json(tmp_path):
    code, out, _ = run("solve", "--a", "1", "--b", "1", "--samples", "9")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "s,r,u,psi" and len(lines) == 10
    path = tmp_path / "p.json"
    code, out, _ = run("solve", "--a", "1", "--b", "1", "--c", "0.5", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    d = json.loads(path.read_text())
    assert d["stop_reason"] == "RadiusReached"
    assert d["c_end"] == pytest.approx(0.5)


def test_report_fields():
    d = json.loads(run("report", "--a", "0", "--b", "1")[1])
    for key in ("area", "volume", "height", "energy", "q_n1", "c0", "flux_residual", "heinz_margin"):
        assert key in d
    assert d["volume"] == pytest.approx(32 * 3.141592653589793 / 3, rel=1e-10)


def test_sweep_order():
    code, out, _ = run("sweep", "--a", "1,0,-1", "--b", "4,1")
    assert code == 0
    rows = [json.loads(ln) for ln in out.splitlines()]
    assert [(r["a"], r["b"]) for r in rows] == [(1, 4), (1, 1), (0, 4), (0, 1), (-1, 4), (-1, 1)]


def test_sweep_reports_domain_rows():
    rows = [json.loads(ln) for ln in run("sweep", "--a", "0", "--b", "0,1")[1].splitlines()]
    assert rows[0]["error"] == "domain" and "area" in rows[1]


@pytest.mark.parametrize("argv", [
    ("classify", "--a", "x", "--b", "1"),
    ("classify", "--b", "1"),
    ("solve", "--a", "1", "--b", "1", "--format", "xml"),
    ("solve", "--a", "1", "--b", "1", "--samples", "2"),
    ("verify", "--a", "1", "--b", "1", "--d", "1"),
    ("nonsense",),
    (),
])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "usage"


@pytest.mark.parametrize("argv", [
    ("classify", "--a", "0", "--b", "0"),
    ("report", "--a", "1", "--b", "1", "--c", "5"),
    ("verify", "--a", "0", "--b", "0"),
])
def test_domain_errors(argv):
    code, _, err = run(*argv)
    assert code == 3
    assert json.loads(err)["error"] == "domain"


def test_mesh_io_error(tmp_path):
    code, _, err = run("mesh", "--a", "1", "--b", "1", "--out", str(tmp_path / "no" / "x.obj"))
    assert code == 2 and json.loads(err)["error"] == "io"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "rotadrop", "classify", "--a", "1", "--b", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["type"] == "TypeI"
    res = subprocess.run([sys.executable, "-m", "rotadrop", "classify", "--a", "0", "--b", "0"],
                         capture_output=True, text=True)
    assert res.returncode == 3 and json.loads(res.stderr)["exit_code"] == 3


def test_solve_past_c0_ends_at_vertical_tangent():
    code, out, _ = run("solve", "--a", "1", "--b", "1", "--c", "5", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["stop_reason"] == "VerticalTangent"
    assert d["c_end"] == pytest.approx(1.1795090246029174, rel=1e-12)
