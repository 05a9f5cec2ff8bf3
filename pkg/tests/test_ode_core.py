"""Tests for the Euler-Lagrange system and its integrator"""
import sys
from pathlib import Path

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import math

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from core.exceptions import ValidationError
from models.ode import (
    ACC_A,
    ACC_C,
    DU,
    U,
    IntegratorConfig,
    PhaseState,
    Trajectory,
    TrajectoryMeta,
    TerminationReason
)
from services.ode_core import _refine_event, el_rhs, first_critical_point, first_integral, integrate

LAM = 0.1580

def test_el_rhs_substitution():
    """Fourth derivative and accumulator rates by direct substitution"""
    d = el_rhs(PhaseState(u=1.0, du=0.0, d2u=-0.5, d3u=0.0), 0.25)
    assert d.shape == (8,)
    assert d[3] == pytest.approx(-1.5)
    assert d[0] == 0.0 and d[1] == -0.5 and d[2] == 0.0

    d = el_rhs(PhaseState(u=1.0, du=1.0, d2u=1.0, d3u=1.0), 0.0)
    assert d[3] == pytest.approx(3.0)
    assert list(d[4:7]) == [1.0, 1.0, 1.0]
    assert d[7] == 1.0

def test_el_rhs_rest_point():
    d = el_rhs(PhaseState(u=0.0, du=0.0, d2u=0.0, d3u=0.0), 0.7)
    assert np.all(d == 0.0)

def test_el_rhs_rejects_non_finite():
    with pytest.raises(ValidationError):
        el_rhs(PhaseState(u=1.0, du=0.0, d2u=0.0, d3u=0.0), float("nan"))
    with pytest.raises(PydanticValidationError):
        PhaseState(u=float("inf"), du=0.0, d2u=0.0, d3u=0.0)

def test_integrator_config_invariants():
    with pytest.raises(PydanticValidationError):
        IntegratorConfig(rel_tol=0.0)
    with pytest.raises(PydanticValidationError):
        IntegratorConfig(blowup_threshold=1.0)
    with pytest.raises(PydanticValidationError):
        IntegratorConfig(method="LSODA")

def test_rest_point_stays_zero():
    cfg = IntegratorConfig(x_max=10.0)
    traj = integrate(PhaseState(u=0.0, du=0.0, d2u=0.0, d3u=0.0), 0.2, cfg)
    assert traj.meta.termination == TerminationReason.HORIZON
    assert traj.x_hi == pytest.approx(10.0)
    assert np.all(traj.y == 0.0)

def test_blowup_is_detected():
    """u = 10 / (1 - x)^2 solves the system at lambda = 0.2 and leaves 1e6 before x = 1"""
    cfg = IntegratorConfig(x_max=5.0, blowup_threshold=1e6)
    traj = integrate(PhaseState(u=10.0, du=20.0, d2u=60.0, d3u=240.0), 0.2, cfg)
    assert traj.meta.termination == TerminationReason.BLOWUP
    assert traj.x_hi < 1.0
    assert abs(traj.y[U, -1]) == pytest.approx(1e6, rel=1e-6)

def test_first_integral_is_conserved():
    cfg = IntegratorConfig(x_max=10.0)
    traj = integrate(PhaseState.launch(math.sqrt(LAM)), LAM, cfg)
    H = first_integral(traj.y, -LAM)
    assert np.max(np.abs(H)) <= 1e-6

def test_accumulators_are_monotone():
    cfg = IntegratorConfig(x_max=10.0)
    traj = integrate(PhaseState.launch(math.sqrt(LAM)), LAM, cfg)
    assert traj.y[ACC_A, 0] == 0.0 and traj.y[ACC_C, 0] == 0.0
    assert np.all(np.diff(traj.y[ACC_A]) >= 0.0)
    assert np.all(np.diff(traj.y[ACC_C]) >= 0.0)
    assert np.all(np.diff(traj.x) > 0.0)

def test_half_period():
    T, traj = first_critical_point(math.sqrt(LAM), LAM, IntegratorConfig())
    assert T == pytest.approx(3.43963, abs=1e-3)
    assert traj.x_hi == T
    assert traj.meta.termination == TerminationReason.EVENT
    assert abs(traj.y[DU, -1]) <= IntegratorConfig().abs_tol

def test_u_decreases_before_the_critical_point():
    T, traj = first_critical_point(math.sqrt(LAM), LAM, IntegratorConfig())
    inside = (traj.x > 0.0) & (traj.x < T)
    assert np.all(traj.y[DU, inside] < 0.0)

def test_half_period_under_refinement():
    cfg = IntegratorConfig()
    T_coarse, _ = first_critical_point(math.sqrt(LAM), LAM, cfg)
    T_fine, _ = first_critical_point(math.sqrt(LAM), LAM, cfg.refined())
    assert abs(T_coarse - T_fine) < 10.0 * cfg.rel_tol

def test_trajectory_evaluation_range():
    _, traj = first_critical_point(math.sqrt(LAM), LAM, IntegratorConfig())
    assert traj.at(0.0).phase.u == 1.0
    with pytest.raises(ValueError):
        traj.evaluate(np.array([traj.x_hi + 1.0]))

def test_degenerate_launch_is_rejected():
    with pytest.raises(ValidationError):
        first_critical_point(0.0, LAM, IntegratorConfig())
    with pytest.raises(ValidationError):
        first_critical_point(-0.3, LAM, IntegratorConfig())

def test_no_critical_point_before_horizon():
    T, traj = first_critical_point(math.sqrt(LAM), LAM, IntegratorConfig(x_max=1.0))
    assert T is None
    assert traj.meta.termination == TerminationReason.HORIZON

def test_negative_launch_blows_up():
    """u(0) = -2, u''(0) = -1 leaves the blow-up threshold before the horizon"""
    cfg = IntegratorConfig()
    traj = integrate(PhaseState(u=-2.0, du=0.0, d2u=-1.0, d3u=0.0), 0.2, cfg)
    assert traj.meta.termination == TerminationReason.BLOWUP
    assert traj.x_hi < cfg.x_max

def test_blowup_before_critical_point():
    T, traj = first_critical_point(1.0, -0.1, IntegratorConfig())
    assert T is None
    assert traj.meta.termination == TerminationReason.BLOWUP

def _bracketing_trajectory() -> Trajectory:
    y = np.zeros((8, 3))
    y[U] = [1.0, 0.9, 0.8]
    y[DU] = [0.0, -0.5, 0.5]
    return Trajectory(
        x=np.array([0.0, 1.0, 2.0]),
        y=y,
        lam=0.2,
        meta=TrajectoryMeta(n_steps=2, termination=TerminationReason.EVENT)
    )

def test_refined_event_moves_the_last_point():
    traj = _bracketing_trajectory()
    T = _refine_event(traj, 2.0, IntegratorConfig())
    assert T == pytest.approx(1.5, abs=1e-10)
    assert traj.x_hi == T
    assert np.all(np.diff(traj.x) > 0.0)

def test_refined_event_on_previous_point(monkeypatch):
    """A root on the previous grid point drops the event point instead of repeating x"""
    monkeypatch.setattr("services.ode_core.brentq", lambda f, a, b, xtol: a)
    traj = _bracketing_trajectory()
    T = _refine_event(traj, 2.0, IntegratorConfig())
    assert T == 1.0
    assert list(traj.x) == [0.0, 1.0]
    assert traj.y.shape == (8, 2)
