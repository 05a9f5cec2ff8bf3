"""Tests for the shooting schemes and the root solve for the sharp constant"""
import sys
from pathlib import Path

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import math

import numpy as np
import pytest

from core.exceptions import BracketError, IntegrationError, ValidationError
from models.ode import TerminationReason
from models.shooting import ShotStatus
from services.ode_core import first_critical_point
from services.shooting import (
    find_infimum,
    g_of_lambda,
    j_of_lambda,
    j_tilde,
    minimizer_profile,
    shoot,
    sweep_row
)

def test_shoot_near_the_root(integrator):
    shot = shoot(math.sqrt(0.1580), 0.1580, integrator)
    assert shot.status == ShotStatus.FOUND
    assert shot.T == pytest.approx(3.43963, abs=1e-3)
    assert shot.Q == pytest.approx(-0.1580, abs=5e-4)
    assert shot.breakdown.C > 0
    assert shot.breakdown.interval == (0.0, shot.T)

def test_shoot_large_launch_reaches_critical_point(integrator):
    shot = shoot(10.0, 0.2, integrator)
    assert shot.status == ShotStatus.FOUND
    assert shot.T > 0.0

def test_shoot_records_blowup(monkeypatch, integrator):
    blown = first_critical_point(1.0, -0.1, integrator)
    assert blown[0] is None
    monkeypatch.setattr("services.shooting.first_critical_point", lambda a, lam, cfg: blown)
    shot = shoot(1.0, 0.2, integrator)
    assert shot.status == ShotStatus.BLOWUP
    assert shot.termination == TerminationReason.BLOWUP
    assert shot.T is None and shot.Q is None

def test_shoot_step_underflow_counts_as_blowup(monkeypatch, integrator):
    def underflow(a, lam, cfg):
        raise IntegrationError(message="step size underflow", details={"x": 1.0})

    monkeypatch.setattr("services.shooting.first_critical_point", underflow)
    shot = shoot(1.0, 0.2, integrator)
    assert shot.status == ShotStatus.BLOWUP
    assert not shot.found

def test_shoot_parameter_domain(integrator):
    with pytest.raises(ValidationError):
        shoot(0.0, 0.2, integrator)
    with pytest.raises(ValidationError):
        shoot(0.5, 0.25, integrator)
    with pytest.raises(ValidationError):
        shoot(0.5, 0.0, integrator)

def test_g_brackets_the_root(integrator):
    g_low, _ = g_of_lambda(0.145, integrator)
    g_high, _ = g_of_lambda(0.2, integrator)
    assert g_low < 0.0 < g_high

def test_j_tilde_uses_square_root_launch(integrator):
    shot = j_tilde(0.2, integrator)
    assert shot.a == pytest.approx(math.sqrt(0.2))
    assert shot.lam == 0.2

def test_j_not_above_j_tilde(integrator):
    a_star, shot = j_of_lambda(0.2, integrator)
    assert shot.found and shot.a == a_star
    assert shot.Q >= -0.25
    assert shot.Q <= j_tilde(0.2, integrator).Q + 1e-6

def test_j_of_lambda_domain(integrator):
    with pytest.raises(ValidationError):
        j_of_lambda(9.0 / 64.0, integrator)

def test_sharp_constant(infimum):
    assert infimum.I_value == pytest.approx(-0.1580, abs=5e-4)
    assert -0.25 < infimum.I_value < -9.0 / 64.0
    assert infimum.shot.T == pytest.approx(3.43963, abs=1e-3)
    assert infimum.shot.T >= (abs(infimum.I_value) / 2.0) ** (-2.0 / 7.0)

def test_root_is_bracketed(infimum):
    lo, hi = infimum.bracket
    assert hi - lo <= 1e-10
    assert lo <= infimum.lam <= hi
    assert infimum.shot.Q + infimum.lam == pytest.approx(0.0, abs=1e-8)

def test_methods_agree_at_the_root(infimum):
    assert infimum.J is not None
    assert infimum.method_gap <= 1e-4
    assert infimum.a_star ** 2 == pytest.approx(abs(infimum.I_value), abs=1e-4)

def test_coarse_root_tolerance(integrator, infimum):
    coarse = find_infimum(integrator, root_tol=1e-4, cross_validate=False)
    assert abs(coarse.I_value - infimum.I_value) <= 2e-4

def test_invalid_bracket(integrator):
    with pytest.raises(BracketError, match="bracket invalid") as exc:
        find_infimum(integrator, bracket=(0.20, 0.24), cross_validate=False)
    assert "scan" in exc.value.details

def test_minimizer_profile_shape(profile, infimum):
    mid = len(profile) // 2
    assert profile.grid[mid] == 0.0
    assert profile.values[mid] == pytest.approx(1.0)
    assert profile.du[mid] == 0.0
    assert profile.d3u[mid] == 0.0
    assert profile.derivs[mid] == pytest.approx(-math.sqrt(abs(infimum.I_value)), abs=1e-12)
    assert profile.derivs[mid] == pytest.approx(-0.39749, abs=1e-3)

def test_minimizer_changes_sign_and_decreases(profile):
    mid = len(profile) // 2
    assert profile.values.min() < 0.0
    assert np.all(np.diff(profile.values[mid:]) < 0.0)
    # even extension
    assert np.allclose(profile.values, profile.values[::-1], rtol=0, atol=1e-12)
    assert np.allclose(profile.du, -profile.du[::-1], rtol=0, atol=1e-12)

def test_profile_first_integral(profile):
    assert np.max(np.abs(profile.h_residual)) <= 1e-8

def test_profile_needs_found_shot(integrator):
    shot = shoot(math.sqrt(0.2), 0.2, integrator.model_copy(update={"x_max": 0.5}))
    assert shot.status == ShotStatus.NO_CRITICAL_POINT
    with pytest.raises(ValidationError):
        minimizer_profile(shot, 101)

def test_sweep_row(integrator):
    row = sweep_row(0.2, integrator)
    assert row.status == "ok"
    assert row.complete
    assert row.g == pytest.approx(row.J_tilde + 0.2)
    assert row.J <= row.J_tilde + 1e-6

def test_sweep_row_records_failures(integrator):
    row = sweep_row(0.14, integrator)
    assert row.J is None
    assert row.status.startswith("J: lambda must lie in")
