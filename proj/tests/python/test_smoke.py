import json
import math
from pathlib import Path

import numpy as np
import pytest

import modlab

ROOT = Path(__file__).resolve().parents[2]


def bump_samples(a, b, n=4096, u_min=-8.0, u_max=8.0):
    return modlab.bump(np.linspace(u_min, u_max, n), a, b)


def test_araki_worked_example():
    rho = np.diag([2 / 3, 1 / 3]).astype(complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    assert modlab.araki_relative_entropy(rho, sx) == pytest.approx(math.log(2) / 3, rel=1e-9)


def test_tomita_takesaki_residuals_small():
    rng = np.random.default_rng(3)
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = g @ g.conj().T + 0.1 * np.eye(3)
    rho /= np.trace(rho).real
    residuals = modlab.verify_tomita_takesaki(rho)
    assert "kms_boundary_identity" in residuals
    assert max(residuals.values()) <= 1e-9


def test_gns_of_mixed_state_on_full_algebra():
    e01 = np.zeros((2, 2), dtype=complex)
    e01[0, 1] = 1
    out = modlab.gns([e01], np.diag([0.75, 0.25]).astype(complex))
    assert out["gns_dim"] == 4
    assert not out["pure"]
    assert out["reconstruction"] <= 1e-12


def test_kms_smeared_selects_beta_one():
    h = np.diag([0.0, 1.0]).astype(complex)
    a = np.array([[0, 2], [1, 0]], dtype=complex)
    b = np.array([[0.3, 0], [1, -0.2]], dtype=complex)
    assert modlab.kms_smeared_check(h, 1.0, a, b, 1.0) < 1e-6
    assert modlab.kms_smeared_check(h, 1.0, a, b, 2.0) > 1e-3


def test_lambda_hermitian_and_positive():
    h1, h2 = bump_samples(-2, -1), bump_samples(-1.8, -0.6)
    l12 = modlab.lambda_1d(h1, h2)
    l21 = modlab.lambda_1d(h2, h1)
    assert abs(l12 - l21.conjugate()) <= 1e-12 * abs(l12)
    assert modlab.lambda_1d(h1, h1).real > 0


def test_horizon_kms_and_entropy():
    f, g = bump_samples(-2, -1), bump_samples(-1.5, -0.5)
    assert modlab.kms_dilation_check(f, g, 2 * math.pi) <= 1e-3
    s = modlab.coherent_relent(f)
    assert s["via_lambda"] == pytest.approx(s["closed"], rel=1e-2)
    assert s["via_weyl"] == pytest.approx(s["closed"], rel=1e-2)


def test_invalid_profile_raises():
    bad = np.ones(4096)
    with pytest.raises(modlab.ModlabError, match="InvalidProfile"):
        modlab.lambda_1d(bad, bad)


def test_experiments_and_reports():
    names = [e[0] for e in modlab.list_experiments()]
    assert len(names) == 7 and names[0] == "gns"
    text, ok = modlab.run_experiment(str(ROOT / "configs" / "gns.json"))
    assert ok
    report = json.loads(text)
    assert list(report) == ["experiment", "params", "checks"]
    assert list(report["checks"][0]) == ["name", "value", "reference", "provenance", "tolerance", "pass"]


def test_tunneling_reports_limits():
    t = modlab.tunneling_overlap(1.0, 4)
    assert t["thermal_limit"] == pytest.approx(math.exp(-2 * math.pi))
    assert t["real_packet_limit"] == pytest.approx(1 / math.cosh(math.pi) ** 2)
