import csv
import io
import json
import math

import numpy as np
import pytest

from capillary import cli, coexistence
from capillary.coexistence import CoexistenceState, maxwell_construction
from capillary.config import ENV_VAR
from capillary.errors import ConvergenceError
from capillary.interface import InterfaceProfile, TensionResult


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = cli.run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_coexist_matches_library(fluid):
    status, out, _ = run("coexist", "--temp-reduced", "0.9")
    assert status == 0
    (row,) = rows(out)
    c = maxwell_construction(0.9, fluid)
    assert float(row["rho_v"]) == c.rho_v and float(row["rho_l"]) == c.rho_l
    assert float(row["p0"]) == c.p0


def test_coexist_json_round_trip(fluid):
    status, out, _ = run("coexist", "--temp-reduced", "0.9", "--output", "json")
    assert status == 0
    assert CoexistenceState.from_dict(json.loads(out)) == maxwell_construction(0.9, fluid)


def test_global_flags_before_subcommand():
    assert run("--output", "json", "coexist", "--temp-reduced", "0.8")[0] == 0


def test_laplace_planar():
    status, out, _ = run("laplace", "--q", "1", "--rm", "inf", "--rho-v", "0.5",
                         "--rho-l", "2")
    assert status == 0
    (row,) = rows(out)
    assert float(row["dp"]) == 1.5
    status, out, _ = run("laplace", "--q", "1", "--rm", "inf", "--rho-v", "0.5",
                         "--rho-l", "2", "--output", "json")
    rec = json.loads(out)
    assert rec["r_m"] == math.inf
    res = cli.jump_from_record(rec)
    assert res.dp == res.inertial_term + res.capillary_term == 1.5


def test_laplace_at_temperature_uses_tension(fluid):
    status, out, _ = run("laplace", "--q", "0", "--rm", "-10", "--temp-reduced", "0.9",
                         "--output", "json")
    rec = json.loads(out)
    np.testing.assert_allclose(rec["dp"], 2 * rec["h"] / -10.0, rtol=1e-15)
    assert rec["h"] > 0


def test_laplace_eta_modes():
    base = ["laplace", "--q", "1", "--rho-v", "0.5", "--rho-l", "2", "--output", "json",
            "--mu-v", "0.3", "--mu-l", "0.6"]
    stokes = json.loads(run(*base, "--eta-mode", "stokes")[1])
    np.testing.assert_allclose(stokes["k"], -(-0.4 / 2 + 0.2 / 0.5), rtol=1e-15)
    explicit = json.loads(run(*base, "--eta-mode", "explicit", "--eta-v", "0.1",
                              "--eta-l", "0.1")[1])
    np.testing.assert_allclose(explicit["k"], -(0.05 - 0.2), rtol=1e-15)
    status, _, err = run(*base, "--eta-mode", "explicit")
    assert status == 2 and json.loads(err)["error"] == "parse"


def test_supercritical_exit_3():
    status, out, err = run("tension", "--temp-reduced", "1.1")
    assert status == 3 and out == ""
    rec = json.loads(err)
    assert rec["error"] == "domain"
    assert "no coexistence above critical temperature" in rec["message"]


@pytest.mark.parametrize("argv", [
    ["coexist"],
    ["nonsense"],
    ["laplace", "--q", "nan"],
    ["profile", "--temp-reduced", "0.9", "--points", "zero"],
    ["coexist", "--temp-reduced", "0.9", "--output", "xml"],
])
def test_parse_errors_exit_2(argv):
    status, out, err = run(*argv)
    assert status == 2 and out == ""
    assert json.loads(err)["error"] == "parse"


def test_convergence_exit_4(monkeypatch):
    def boom(temp, fluid):
        raise ConvergenceError("stalled", last=(0.1, 2.0))
    monkeypatch.setattr(coexistence, "maxwell_construction", boom)
    status, _, err = run("coexist", "--temp-reduced", "0.9")
    assert status == 4 and json.loads(err)["error"] == "convergence"


def test_domain_error_from_profile_args():
    status, _, err = run("profile", "--temp-reduced", "0.9", "--points", "8")
    assert status == 3


def test_profile_outputs():
    status, out, _ = run("profile", "--temp-reduced", "0.9", "--points", "101")
    table = rows(out)
    assert len(table) == 101 and list(table[0]) == ["z", "rho", "drho_dz"]
    status, out, _ = run("profile", "--temp-reduced", "0.9", "--points", "101",
                         "--output", "json")
    prof = InterfaceProfile.from_dict(json.loads(out))
    assert float(table[50]["rho"]) == prof.rho[50]
    assert prof.h_static > 0 and prof.thickness_10_90 > 0


def test_tension_round_trip():
    status, out, _ = run("tension", "--temp-reduced", "0.8", "--output", "json")
    res = TensionResult.from_dict(json.loads(out))
    assert res.h_static == res.branch_v + res.branch_l


def test_marangoni():
    status, out, _ = run("marangoni", "--temp-reduced", "0.9", "--dtds", "0.1", "-0.2",
                         "--output", "json")
    assert status == 0
    rec = json.loads(out)
    assert rec["dh_dt"] < 0
    np.testing.assert_allclose([rec["d13"], rec["d23"]],
                               [-rec["grad_h_1"] / (2 * rec["mu_l"]),
                                -rec["grad_h_2"] / (2 * rec["mu_l"])], rtol=1e-15)
    assert run("marangoni", "--temp-reduced", "0.9", "--dtds", "1", "2", "3")[0] == 2
    assert run("marangoni", "--temp-reduced", "0.9995", "--dtds", "1")[0] == 3


def test_verify_all_pass():
    status, out, _ = run("verify")
    assert status == 0
    table = rows(out)
    assert len(table) == 7 and all(r["passed"] == "True" for r in table)


def test_sweep_sorted_and_consistent(fluid):
    status, out, _ = run("sweep", "--tmin", "0.5", "--tmax", "0.95", "--steps", "7",
                         "--workers", "4")
    temps = [float(r["temp"]) for r in rows(out)]
    assert temps == sorted(temps) and len(temps) == 7
    status, out, _ = run("sweep", "--tmin", "0.5", "--tmax", "0.95", "--steps", "7",
                         "--what", "tension", "--output", "json")
    recs = [TensionResult.from_dict(r) for r in json.loads(out)]
    h = [r.h_static for r in recs]
    assert np.all(np.diff(h) < 0)
    assert run("sweep", "--tmin", "0.5", "--tmax", "1.2")[0] == 3


def test_csv_seventeen_digits():
    _, out, _ = run("coexist", "--temp-reduced", "0.9")
    (row,) = rows(out)
    assert row["rho_l"] == f"{float(row['rho_l']):.17g}"
    assert row["temp"] == "0.90000000000000002"


def test_out_file_and_env(tmp_path, monkeypatch):
    cfg = tmp_path / "f.json"
    cfg.write_text(json.dumps({"units": "reduced", "lambda": 4.0}))
    monkeypatch.setenv(ENV_VAR, str(cfg))
    target = tmp_path / "t.json"
    status, out, _ = run("tension", "--temp-reduced", "0.9", "--output", "json",
                         "--out", str(target))
    assert status == 0 and out == ""
    h4 = json.loads(target.read_text())["h_static"]
    monkeypatch.delenv(ENV_VAR)
    _, out, _ = run("tension", "--temp-reduced", "0.9", "--output", "json")
    np.testing.assert_allclose(h4, 2 * json.loads(out)["h_static"], rtol=1e-10)


def test_water_fluid_by_name():
    status, out, _ = run("--fluid", "water", "coexist", "--temp", "500")
    assert status == 0
    (row,) = rows(out)
    assert 0 < float(row["rho_v"]) < float(row["rho_l"])
