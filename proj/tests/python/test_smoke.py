import json
import math
import os
import subprocess

import numpy as np
import pytest

import chsys

DATA = os.environ.get("CHSYS_TEST_DATA", os.path.join(os.path.dirname(__file__), "..", "data"))


def load(name):
    with open(os.path.join(DATA, name)) as fh:
        return json.load(fh)


def grid(n):
    return np.arange(n) / n


def test_spectral_operators_on_a_cosine():
    x = grid(64)
    f = np.cos(2 * np.pi * x)
    coeffs = chsys.to_spectral(f)
    assert abs(coeffs[1] - 0.5) < 1e-14
    assert np.max(np.abs(chsys.derivative(f) + 2 * np.pi * np.sin(2 * np.pi * x))) < 1e-12
    assert np.max(np.abs(chsys.helmholtz_inverse(f) - f / (1 + 4 * np.pi**2))) < 1e-15
    assert np.max(np.abs(chsys.antiderivative_zero_mean(f + 3.0) - np.sin(2 * np.pi * x) / (2 * np.pi))) < 1e-15


def test_besov_norm_of_a_single_mode():
    x = grid(64)
    f = np.cos(16 * np.pi * x)
    assert chsys.besov_norm(f, 0.0, "2", "2", filter="sharp") == pytest.approx(1 / math.sqrt(2))


def test_invalid_input_raises():
    with pytest.raises(ValueError):
        chsys.derivative(np.array([1.0, np.nan, 0.0, 0.0]))
    with pytest.raises(ValueError):
        chsys.derivative(np.ones(7))


def test_closed_forms():
    assert chsys.hbar(1.0, 1.0) == pytest.approx(9 * math.exp(4))
    assert chsys.global_sufficient_condition(1.0) == pytest.approx(math.log(2) / 24)
    assert 16 < chsys.lambda_threshold(1.0) < 17


def test_simulate_standard_case():
    result = chsys.simulate(load("standard.json"))
    assert result["status"] == "completed"
    assert result["t_final"] == pytest.approx(0.1)
    series = np.asarray(result["series"])
    columns = list(result["columns"])
    mass = series[:, columns.index("mass_m")]
    assert np.max(np.abs(mass - mass[0])) < 1e-12
    assert len(result["final_m"]) == 64


def test_bounds_and_normalized_config():
    cfg = load("standard.json")
    report = chsys.bounds(cfg)
    assert report["F0"] > 0
    assert report["A_infinity"] == float("inf")
    assert chsys.normalized_config(cfg)["grid"]["n_modes"] == 64
    with pytest.raises(ValueError):
        chsys.simulate(load("invalid.json"))


def test_cli_binding():
    code, out, _ = chsys.cli(["bounds", os.path.join(DATA, "standard.json")])
    assert code == 0
    assert "F0" in json.loads(out)


@pytest.mark.skipif("CHSYS_CLI" not in os.environ, reason="CLI executable not provided")
def test_cli_executable_exit_codes(tmp_path):
    exe = os.environ["CHSYS_CLI"]
    ok = subprocess.run([exe, "simulate", os.path.join(DATA, "zero.json"), "--output", str(tmp_path / "z")],
                        capture_output=True, text=True)
    assert ok.returncode == 0
    assert (tmp_path / "z" / "manifest.json").exists()
    bad = subprocess.run([exe, "simulate", os.path.join(DATA, "invalid.json")], capture_output=True, text=True)
    assert bad.returncode == 1
    assert "grid.n_modes" in bad.stderr
