"""Analytic checks on the solver output and on closed-form test functions"""
import math
from typing import List, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from core.config import NEG_QUARTER, NINE_64
from core.exceptions import ConstructionError, ValidationError
from core.logging import get_logger
from models.functionals import FunctionalBreakdown, MinimizerProfile, SampledFunction
from models.ode import ACC_A, ACC_C, ACC_D, IntegratorConfig, PhaseState, Trajectory
from models.oracles import IdentityResiduals, OracleReport
from models.shooting import ShotResult
from services.functionals import (
    first_derivative,
    nehari_optimal_mu,
    q_of_sampled,
    rescale,
    second_derivative,
    square_completion_margin
)
from services.ode_core import first_integral
from utils.validators import validate_positive

logger = get_logger(__name__)

BAR_U_SAMPLES = 8192
BOUNDARY_MARGIN = 1e-3

def _auxiliary_rhs(x: float, z: np.ndarray) -> np.ndarray:
    # y'' = |y|^4 / 8
    return np.array([z[1], z[0] ** 4 / 8.0])

def _zero_crossing(x: float, z: np.ndarray) -> float:
    return z[0]
_zero_crossing.terminal = True
_zero_crossing.direction = 1.0

def bar_u_construction(
    y0: float,
    cfg: Optional[IntegratorConfig] = None,
    n_samples: int = BAR_U_SAMPLES
) -> SampledFunction:
    """
    Compactly supported test function with quotient -9/64.

    y solves y'' = y^4/8, y(0) = y0 < 0, y'(0) = 0 up to its first zero x1. The function
    is y^3 on (-x1, x1) and 0 outside, sampled on [-x1 - x1/4, x1 + x1/4] together with
    its exact second derivative 6 y y'^2 + 3 y^2 y''.
    """
    if not y0 < 0:
        raise ValidationError(message="y0 must be negative", details={"y0": y0})
    cfg = cfg or IntegratorConfig()

    sol = solve_ivp(
        _auxiliary_rhs,
        (0.0, cfg.x_max),
        np.array([y0, 0.0]),
        method=cfg.method,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
        dense_output=True,
        events=_zero_crossing
    )
    if sol.status != 1 or sol.t_events[0].size == 0:
        logger.error("Auxiliary solution never reached zero", extra={"y0": y0, "x_max": cfg.x_max})
        raise ConstructionError(
            message=f"construction failed: y stays negative up to x_max={cfg.x_max:g}",
            details={"y0": y0, "x_max": cfg.x_max, "solver_message": sol.message}
        )
    x1 = float(sol.t_events[0][0])
    margin = 0.25 * x1

    grid = np.linspace(-x1 - margin, x1 + margin, n_samples)
    inside = np.abs(grid) < x1
    y, dy = sol.sol(np.abs(grid[inside]))

    values = np.zeros_like(grid)
    derivs = np.zeros_like(grid)
    values[inside] = y ** 3
    derivs[inside] = 6.0 * y * dy * dy + 3.0 * y * y * (y ** 4 / 8.0)

    logger.debug("Test function built", extra={"y0": y0, "x1": x1, "n": n_samples})
    return SampledFunction(grid=grid, values=values, derivs=derivs)

def carre_residual(f: SampledFunction) -> float:
    """
    Largest |u'' - 3u^2/8 - 2u'^2/(3u)| on the support of a sampled test function,
    relative to max |u''|.

    Derivatives come from finite differences on the samples only. Points within
    max(1e-3, 3h) of the support boundary are skipped.
    """
    samples = SampledFunction(grid=f.grid, values=f.values)
    d1u = first_derivative(samples, periodic=False)
    d2u = second_derivative(samples, periodic=False)

    support = f.values != 0.0
    if not np.any(support):
        raise ValidationError(message="function has empty support")
    x_lo, x_hi = f.grid[support][0], f.grid[support][-1]
    h = float(np.max(np.diff(f.grid)))
    margin = max(BOUNDARY_MARGIN, 3.0 * h)
    mask = support & (f.grid > x_lo + margin) & (f.grid < x_hi - margin)

    u = f.values[mask]
    residual = d2u[mask] - 0.375 * u * u - (2.0 / 3.0) * d1u[mask] ** 2 / u
    return float(np.max(np.abs(residual)) / np.max(np.abs(d2u[mask])))

def first_integral_residual(s: PhaseState, I_value: float) -> float:
    """H = u' u''' - u''^2/2 - u'^2 u - I u^4/2 at one state"""
    return float(first_integral(s.as_array(), I_value))

def infimum_identities(
    shot: ShotResult,
    traj: Optional[Trajectory] = None,
    lam: Optional[float] = None
) -> IdentityResiduals:
    """
    The multiplier, virial and value identities over one full period (0, 2T).

    Half-period accumulators are doubled using evenness. lam defaults to the shot's own
    parameter; passing another value tests the identities against it.
    """
    traj = traj if traj is not None else shot.trajectory
    if not shot.found or traj is None:
        raise ValidationError(
            message="identities need a found shot with its trajectory",
            details={"status": shot.status.value}
        )
    lam = shot.lam if lam is None else lam
    T = float(shot.T)

    end = traj.evaluate(np.array([T]))[:, 0]
    A = 2.0 * float(end[ACC_A])
    C = 2.0 * float(end[ACC_C])
    D = 2.0 * float(end[ACC_D])
    tail = 1.5 * A + D - 0.5 * lam * C

    return IdentityResiduals(
        lam=lam,
        T=T,
        a=shot.a,
        C=C,
        multiplier=(A + 3.0 * D + 2.0 * lam * C) / C,
        virial=(T * (lam - shot.a ** 2) + tail) / C,
        value=(A + 2.0 * D + lam * C) / C,
        a_squared_implied=lam + tail / T
    )

def identity_reports(res: IdentityResiduals, tol: float = 1e-6) -> List[OracleReport]:
    """Residuals close to zero and the implied a^2 close to lambda"""
    return [
        OracleReport.close("identity_multiplier", 0.0, res.multiplier, tol),
        OracleReport.close("identity_virial", 0.0, res.virial, tol),
        OracleReport.close("identity_value", 0.0, res.value, tol),
        OracleReport.close("a_squared_equals_lambda", res.lam, res.a_squared_implied, tol,
                           note=f"a^2 = {res.a ** 2:.12g}")
    ]

def negative_control_reports(res: IdentityResiduals, floor: float = 1e-2) -> List[OracleReport]:
    """Off the root the multiplier and value identities must fail by at least floor"""
    note = "the virial identity holds for every shot with a critical point"
    return [
        OracleReport.at_least("control_multiplier", floor, abs(res.multiplier), note=note),
        OracleReport.at_least("control_value", floor, abs(res.value), note=note)
    ]

def l4_normalized_period(T: float, C: float) -> float:
    """Half-period after the scaling u -> s^2 u(s x) that makes the half-period L4 norm one"""
    validate_positive("T", T)
    validate_positive("C", C)
    return T * C ** (1.0 / 7.0)

def period_bound(I_value: float) -> float:
    """(|I|/2)^(-2/7)"""
    return (abs(I_value) / 2.0) ** (-2.0 / 7.0)

def period_bound_check(I_value: float, T: float, C: Optional[float] = None) -> OracleReport:
    """
    T >= (|I|/2)^(-2/7).

    The bound is stated for the unit-L4 normalization; when C (the half-period quartic
    integral) is given the normalized period is compared, otherwise the raw T.
    """
    if not I_value < 0 or not T > 0:
        raise ValidationError(message="need I < 0 and T > 0", details={"I": I_value, "T": T})
    observed = l4_normalized_period(T, C) if C is not None else T
    note = f"raw T = {T:.12g}" + ("; compared after L4 normalization" if C is not None else "")
    return OracleReport.at_least("period_bound", period_bound(I_value), observed, note=note)

def bounds_check(I_value: float) -> OracleReport:
    """-1/4 < I < -9/64, both ends excluded"""
    return OracleReport.between("interval_bounds", NEG_QUARTER, -NINE_64, I_value)

def square_completion_check(b: FunctionalBreakdown, tol: float = 1e-6) -> OracleReport:
    """A - B + C/4 >= 0, relative to C"""
    return OracleReport.at_least("square_completion", 0.0, square_completion_margin(b) / b.C, tolerance=tol)

def nehari_check(b: FunctionalBreakdown, tol: float = 1e-6) -> OracleReport:
    """The minimizer is already Nehari-normalized"""
    return OracleReport.close("nehari_mu", 1.0, nehari_optimal_mu(b), tol)

def first_integral_check(profile: MinimizerProfile, tol: float = 1e-8) -> OracleReport:
    return OracleReport.at_most(
        "first_integral", 0.0, float(np.max(np.abs(profile.h_residual))),
        tolerance=tol, note=f"I = {profile.I_value:.12g}"
    )

def cosine_samples(n: int = 4096) -> SampledFunction:
    """cos on one closed period [0, 2 pi]"""
    grid = np.linspace(0.0, 2.0 * math.pi, n)
    return SampledFunction(grid=grid, values=np.cos(grid))

def cosine_quotient_check(n: int = 4096, tol: float = 1e-6) -> OracleReport:
    """Q(cos) = 4/3 over a full period"""
    b = q_of_sampled(cosine_samples(n), periodic=True)
    return OracleReport.close("cosine_quotient", 4.0 / 3.0, b.Q, tol, note=f"n = {n}")

def scaling_invariance_check(
    sigmas: Sequence[float] = (0.5, 2.0, 3.0),
    n: int = 4096,
    tol: float = 1e-6
) -> List[OracleReport]:
    """Q(s^2 u(s x)) = Q(u) on the cosine test function"""
    f = cosine_samples(n)
    base = q_of_sampled(f, periodic=True).Q
    return [
        OracleReport.close(f"scaling_sigma_{sigma:g}", base, q_of_sampled(rescale(f, sigma), periodic=True).Q, tol)
        for sigma in sigmas
    ]

def bar_u_checks(
    y0_values: Sequence[float] = (-0.5, -1.0, -2.0),
    cfg: Optional[IntegratorConfig] = None,
    tol: float = 1e-6
) -> List[OracleReport]:
    """Quotient -9/64 and the pointwise equation of the test function for each y0"""
    reports = []
    for y0 in y0_values:
        f = bar_u_construction(y0, cfg)
        reports.append(OracleReport.close(f"bar_u_quotient_y0_{y0:g}", -NINE_64, q_of_sampled(f, periodic=False).Q, tol))
        reports.append(OracleReport.close(f"bar_u_equation_y0_{y0:g}", 0.0, carre_residual(f), tol))
    return reports
