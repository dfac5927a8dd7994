import json
import subprocess
import sys
from fractions import Fraction

import pytest

from subflag import checks
from subflag.cli_reports import (
    ReportRequest,
    UsageError,
    dumps,
    main,
    parse_grid,
    run_flag,
    run_report,
    run_sweep,
    run_verify,
)
from subflag.liealg_connection import connection_table

KEYS = {"schema_version", "request", "results", "residuals"}


def cli(*args):
    return subprocess.run([sys.executable, "-m", "subflag", *args], capture_output=True, text=True)


def test_heisenberg_report():
    doc = run_report(ReportRequest(group="heisenberg", n_points=5))
    assert set(doc) == KEYS and doc["schema_version"] == 1
    for point in doc["results"]["points"]:
        assert max(abs(v) for v in point["curvature"]["data"]) <= 1e-12
    assert doc["results"]["flag"]["dims"] == [0, 0]


def test_su2_report():
    doc = run_report(ReportRequest(group="su2", n_points=5, seed=1))
    want = [0, -4, 0, 4, 0, 0, 0, 0, 0]
    for point in doc["results"]["points"]:
        assert point["curvature"]["rows"] == 3 and point["curvature"]["cols"] == 3
        assert max(abs(a - b) for a, b in zip(point["curvature"]["data"], want)) <= 1e-8


def test_singular_point_is_reported_not_fatal():
    doc = run_report(ReportRequest(group="su2", points=[(0.1, 0.0, 0.2), (0.1, 0.4, 0.2)]))
    errs = ["error" in p for p in doc["results"]["points"]]
    assert errs == [True, False]
    assert doc["residuals"]["singular_points"] == 1


def test_cartan_and_general_reports():
    doc = run_report(ReportRequest(group="cartan", rho=Fraction(3)))
    assert doc["results"]["curvature"]["data"] == [0, -6, 0, 6, 0, 0, 0, 0, 0]
    doc = run_report(ReportRequest(group="general", chi=Fraction(1), kappa=Fraction(3), alpha=Fraction(1), beta=Fraction(2)))
    assert doc["residuals"]["torsion"] == 0 and doc["residuals"]["closed_form_deviation"] == 0
    assert doc["results"]["flag"]["projection"]["dims"] == [2, 2]
    assert doc["results"]["obstruction"]["uxy_z_residual"] == -1


def test_flag_command():
    doc = run_flag(0, 2, 0, 0)
    assert doc["results"]["dims"] == [2, 2]


def test_json_round_trip():
    doc = run_report(ReportRequest(group="general", chi=Fraction(1, 3), kappa=Fraction(2)))
    text = dumps(doc)
    assert json.loads(text) == doc
    assert doc["results"]["obstruction"]["uxy_z_residual"] == {"value": -1 / 3, "exact": "-1/3"}


def test_sweep():
    rows = run_sweep(parse_grid("-1,0,1"))
    assert len(rows) == 81
    keyed = {(r["chi"], r["kappa"], r["alpha"], r["beta"]): r for r in rows}
    assert keyed[(0, 0, 0, 0)]["dims"] == [0, 0] and "all-zero" in keyed[(0, 0, 0, 0)]["labels"]
    assert keyed[(1, -1, 0, 0)]["dims"][0] == 1
    assert [tuple(r[k] for k in ("chi", "kappa", "alpha", "beta")) for r in rows] == sorted(keyed)
    assert run_sweep(parse_grid("-1,0,1"), jobs=4) == rows
    assert run_sweep(parse_grid("")) == []
    named = parse_grid("chi=1,2;kappa=0")
    assert named["chi"] == [1, 2] and named["alpha"] == [0]
    with pytest.raises(UsageError):
        parse_grid("gamma=1")


def test_exit_codes(capsys):
    assert main(["sweep", "--grid="]) == 0
    assert main(["report", "--group", "nowhere"]) == 2
    assert main(["report", "--group", "cartan"]) == 2
    assert main(["flag", "--chi", "x", "--kappa", "1"]) == 2
    assert main(["verify", "--only", "torsion_free"]) == 0
    capsys.readouterr()
    assert main(["verify", "--only", "no_such_check"]) == 2
    err = capsys.readouterr().err
    assert "torsion_free" in err and "determinism" in err


def test_verify_unknown_name():
    with pytest.raises(UsageError, match="valid names"):
        run_verify(["nope"])


def test_sign_flip_fails_torsion():
    def flipped(*p):
        ct = connection_table(*p)
        return ct.with_entry(0, 2, -ct.table[0][2])

    (res,) = run_verify(["torsion_free"], checks.Context(table_factory=flipped))
    assert not res.passed and res.residual > 0


def test_byte_identical_cli_output(tmp_path):
    args = ["report", "--group", "su2", "--points", "5", "--seed", "1", "--json"]
    a, b = cli(*args), cli(*args)
    assert a.returncode == 0 and a.stdout == b.stdout
    assert set(json.loads(a.stdout)) == KEYS
    out = tmp_path / "r.json"
    assert main([*args, "--output", str(out)]) == 0
    assert out.read_text() == a.stdout


def test_text_output():
    r = cli("flag", "--chi", "0", "--kappa", "2")
    assert r.returncode == 0 and "dim R1 = 2" in r.stdout
    r = cli("sweep", "--grid=0,1")
    assert r.returncode == 0 and len(r.stdout.splitlines()) == 17
