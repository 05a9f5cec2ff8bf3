"""Tests for the analytic checks"""
import sys
from pathlib import Path

# Add project root to Python path
project_root = str(Path(__file__).parent.parent)
sys.path.insert(0, project_root)

import math

import numpy as np
import pytest

from core.exceptions import ConstructionError, ValidationError
from models.ode import IntegratorConfig, PhaseState
from models.oracles import Comparison, OracleReport
from services.functionals import q_of_sampled
from services.oracles import (
    bar_u_construction,
    bounds_check,
    carre_residual,
    cosine_quotient_check,
    first_integral_check,
    first_integral_residual,
    identity_reports,
    infimum_identities,
    l4_normalized_period,
    negative_control_reports,
    nehari_check,
    period_bound,
    period_bound_check,
    scaling_invariance_check,
    square_completion_check
)
from services.shooting import j_tilde

@pytest.mark.parametrize("y0", [-0.5, -1.0, -2.0])
def test_bar_u_quotient(y0):
    f = bar_u_construction(y0)
    assert len(f) == 8192
    assert f.values[0] == 0.0 and f.values[-1] == 0.0
    assert q_of_sampled(f, periodic=False).Q == pytest.approx(-9.0 / 64.0, abs=1e-6)

@pytest.mark.parametrize("y0", [-1.0, -2.0])
def test_bar_u_satisfies_its_equation(y0):
    assert carre_residual(bar_u_construction(y0)) <= 1e-6

def test_bar_u_construction_errors():
    with pytest.raises(ValidationError):
        bar_u_construction(0.5)
    with pytest.raises(ConstructionError, match="construction failed"):
        bar_u_construction(-1.0, IntegratorConfig(x_max=1.0))

def test_first_integral_at_launch():
    lam = 0.2
    s = PhaseState(u=1.0, du=0.0, d2u=-math.sqrt(lam), d3u=0.0)
    assert first_integral_residual(s, -lam) == pytest.approx(0.0, abs=1e-15)
    assert first_integral_residual(PhaseState(u=0.0, du=0.0, d2u=0.0, d3u=0.0), -lam) == 0.0

def test_bounds_check():
    assert bounds_check(-0.1580).passed
    assert not bounds_check(-0.25).passed
    assert not bounds_check(-0.140625).passed
    assert bounds_check(-0.1580).comparison == Comparison.BETWEEN

def test_period_bound_values():
    assert period_bound(-2.0) == pytest.approx(1.0)
    assert period_bound(-0.1580) == pytest.approx(2.0652, abs=1e-3)

def test_period_bound_check():
    assert period_bound_check(-0.1580, 3.43963).passed
    assert not period_bound_check(-0.1580, 1.0).passed
    report = period_bound_check(-0.1580, 3.43963, C=2.0 ** 7)
    assert report.observed == pytest.approx(2.0 * 3.43963)
    assert "raw T" in report.note
    with pytest.raises(ValidationError):
        period_bound_check(0.1, 3.0)

def test_l4_normalized_period():
    assert l4_normalized_period(3.0, 1.0) == 3.0
    with pytest.raises(ValidationError):
        l4_normalized_period(3.0, 0.0)

def test_oracle_report_comparisons():
    assert OracleReport.close("x", 1.0, 1.0 + 1e-9, 1e-6).passed
    assert not OracleReport.close("x", 1.0, float("nan"), 1.0).passed
    assert OracleReport.at_least("x", 2.0, 2.5).passed
    assert not OracleReport.at_most("x", 0.0, 1e-3, tolerance=1e-8).passed

def test_identities_at_the_root(infimum):
    res = infimum_identities(infimum.shot)
    for residual in res.residuals:
        assert abs(residual) <= 1e-6
    assert res.a_squared_implied == pytest.approx(res.lam, abs=1e-6)
    assert all(report.passed for report in identity_reports(res))

def test_identities_negative_control(integrator):
    """Off the root only the virial identity survives"""
    shot = j_tilde(0.2, integrator)
    res = infimum_identities(shot)
    assert abs(res.multiplier) > 1e-2
    assert abs(res.value) > 1e-2
    assert abs(res.virial) <= 1e-6
    assert all(report.passed for report in negative_control_reports(res))
    assert not all(report.passed for report in identity_reports(res))

def test_identities_with_injected_lambda(infimum):
    res = infimum_identities(infimum.shot, lam=0.2)
    assert not all(report.passed for report in identity_reports(res))

def test_identities_need_a_found_shot(integrator):
    shot = j_tilde(0.2, integrator.model_copy(update={"x_max": 0.5}))
    with pytest.raises(ValidationError):
        infimum_identities(shot)

def test_minimizer_checks(infimum, profile):
    b = infimum.shot.breakdown
    assert square_completion_check(b).passed
    assert nehari_check(b).passed
    assert first_integral_check(profile).passed
    assert period_bound_check(infimum.I_value, infimum.shot.T, b.C).passed
    assert bounds_check(infimum.I_value).passed

def test_closed_form_checks():
    assert cosine_quotient_check().passed
    reports = scaling_invariance_check()
    assert len(reports) == 3
    assert all(r.passed for r in reports)
