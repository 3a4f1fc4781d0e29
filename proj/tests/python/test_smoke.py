import json
import math
import os
import subprocess

import numpy as np
import pytest

import nlrad

RATIONAL = {"kind": "rational", "alpha": 1, "beta": 1, "gamma": 0}


def test_linear_profile():
    sol = nlrad.solve_stationary({"problem": {"n": 3, "N": 64}})
    assert np.allclose(sol["u"], (1 - sol["rho"] ** 2) / 6, atol=1e-12)
    assert sol["u"][-1] == 0.0


def test_scalar_reduction():
    c = 4 * math.pi / 45
    sols = nlrad.solve_pd({"problem": {"N": 128, "a": RATIONAL}})
    assert len(sols) == 1
    assert sols[0]["mu"] == pytest.approx(c / (1 - c), rel=1e-8)
    assert nlrad.scalar_mu_roots(1, 1, 0, c) == pytest.approx([c / (1 - c)], rel=1e-10)


def test_stability_constant():
    cert = nlrad.stability({"problem": {"N": 32, "r": 1, "a": {"kind": "constant", "value": 2}}})
    assert cert["lambda_min"] == pytest.approx(2.0, rel=1e-10)
    assert cert["stable"]


def test_geometry_and_moser():
    assert nlrad.cap_fraction(3, 0.5, 0.5, 0.5) == pytest.approx(0.25)
    assert nlrad.principal_eigenvalue(3) == pytest.approx(math.pi**2, rel=1e-4)
    e = nlrad.moser_exponents(3, 2.0, 1.0)
    assert e["sigma"] == pytest.approx(5 / 7)
    assert e["theta"] == pytest.approx(7 / 8)
    assert nlrad.staircase_breakpoints(0.25, 0.5) == pytest.approx([0, 1, 2, 8])


def test_config_errors():
    with pytest.raises(nlrad.ConfigError, match="f >= 0"):
        nlrad.parse_config({"problem": {"f": -1}})
    with pytest.raises(nlrad.ConfigError, match="unknown key"):
        nlrad.parse_config({"problem": {"radius": 1}})
    assert nlrad.parse_config({"problem": {"radius": 1}}, strict=False)["problem"]["N"] == 256


def test_run_writes_manifest(tmp_path):
    code, err = nlrad.run({"problem": {"N": 32, "a": RATIONAL}, "run": {"mode": "branch", "r_steps": 8}}, tmp_path)
    assert code == 0, err
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["status"] == "ok"
    assert nlrad.manifest_consistent(tmp_path / "manifest.json")
    assert len((tmp_path / "branch.csv").read_text().splitlines()) == 10


@pytest.mark.skipif("NLRAD_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"problem": {"N": "x"}}')
    proc = subprocess.run([os.environ["NLRAD_CLI"], "run", str(bad), "--out", str(tmp_path / "o")],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert "$.problem.N" in proc.stderr
