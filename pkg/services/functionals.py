"""
Rayleigh quotient evaluation.

Trajectories are read through the integrator's accumulators. Sampled functions are
integrated with composite Simpson on their grid; when u'' is not supplied it is
estimated with 5-point stencils (centered, wrapped when periodic, one-sided at the
ends otherwise). With estimated derivatives on a uniform grid the quotient converges
at least at second order in the spacing (fourth order for smooth periodic data).
Non-uniform grids fall back to second-order numpy.gradient.

Periodic samples list one full period including both endpoints, so the last sample
repeats the first.
"""
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from core.exceptions import NehariError, ValidationError
from core.logging import get_logger
from models.functionals import FunctionalBreakdown, SampledFunction
from models.ode import ACC_A, ACC_B, ACC_C, Trajectory
from utils.validators import validate_positive

logger = get_logger(__name__)

MIN_SAMPLES = 5

def breakdown_from_trajectory(traj: Trajectory, x_hi: float) -> FunctionalBreakdown:
    """Quotient over (x_lo, x_hi) read from the accumulators"""
    if not traj.contains(x_hi):
        raise ValidationError(
            message="x_hi outside the trajectory range",
            details={"x_hi": x_hi, "range": (traj.x_lo, traj.x_hi)}
        )
    state = traj.evaluate(np.array([x_hi]))[:, 0]
    return FunctionalBreakdown.from_integrals(
        A=float(state[ACC_A]),
        B=float(state[ACC_B]),
        C=float(state[ACC_C]),
        interval=(traj.x_lo, float(x_hi))
    )

def _wrap(values: np.ndarray) -> np.ndarray:
    """Unique samples of a closed periodic grid"""
    return values[:-1]

def _second_derivative(values: np.ndarray, h: float, periodic: bool) -> np.ndarray:
    if periodic:
        f = _wrap(values)
        d2 = (-np.roll(f, 2) + 16.0 * np.roll(f, 1) - 30.0 * f
              + 16.0 * np.roll(f, -1) - np.roll(f, -2)) / (12.0 * h * h)
        return np.append(d2, d2[0])

    f = values
    d2 = np.empty_like(f)
    d2[2:-2] = (-f[:-4] + 16.0 * f[1:-3] - 30.0 * f[2:-2] + 16.0 * f[3:-1] - f[4:]) / (12.0 * h * h)
    d2[0] = (35.0 * f[0] - 104.0 * f[1] + 114.0 * f[2] - 56.0 * f[3] + 11.0 * f[4]) / (12.0 * h * h)
    d2[1] = (11.0 * f[0] - 20.0 * f[1] + 6.0 * f[2] + 4.0 * f[3] - f[4]) / (12.0 * h * h)
    d2[-1] = (35.0 * f[-1] - 104.0 * f[-2] + 114.0 * f[-3] - 56.0 * f[-4] + 11.0 * f[-5]) / (12.0 * h * h)
    d2[-2] = (11.0 * f[-1] - 20.0 * f[-2] + 6.0 * f[-3] + 4.0 * f[-4] - f[-5]) / (12.0 * h * h)
    return d2

def _first_derivative(values: np.ndarray, h: float, periodic: bool) -> np.ndarray:
    if periodic:
        f = _wrap(values)
        d1 = (np.roll(f, 2) - 8.0 * np.roll(f, 1) + 8.0 * np.roll(f, -1) - np.roll(f, -2)) / (12.0 * h)
        return np.append(d1, d1[0])

    f = values
    d1 = np.empty_like(f)
    d1[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    d1[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    d1[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    d1[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    d1[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    return d1

def _check_samples(f: SampledFunction, periodic: bool) -> Optional[float]:
    """Validate length and return the uniform spacing (None when non-uniform)"""
    if len(f) < MIN_SAMPLES:
        raise ValidationError(
            message=f"grid too short: need at least {MIN_SAMPLES} points",
            details={"n": len(f)}
        )
    h = f.spacing
    if h is None and periodic:
        raise ValidationError(message="periodic differentiation needs a uniform grid")
    return h

def first_derivative(f: SampledFunction, periodic: bool) -> np.ndarray:
    """u' at the grid points"""
    h = _check_samples(f, periodic)
    if h is None:
        return np.gradient(f.values, f.grid, edge_order=2)
    return _first_derivative(f.values, h, periodic)

def second_derivative(f: SampledFunction, periodic: bool) -> np.ndarray:
    """u'' at the grid points, supplied values first"""
    if f.derivs is not None:
        _check_samples(f, periodic=False)
        return f.derivs
    h = _check_samples(f, periodic)
    if h is None:
        return np.gradient(np.gradient(f.values, f.grid, edge_order=2), f.grid, edge_order=2)
    return _second_derivative(f.values, h, periodic)

def q_of_sampled(f: SampledFunction, periodic: bool) -> FunctionalBreakdown:
    """Quotient of an externally supplied sampled function"""
    u = f.values
    d2u = second_derivative(f, periodic)
    u2 = u * u
    breakdown = FunctionalBreakdown.from_integrals(
        A=float(simpson(d2u * d2u, x=f.grid)),
        B=float(simpson(d2u * u2, x=f.grid)),
        C=float(simpson(u2 * u2, x=f.grid)),
        interval=(float(f.grid[0]), float(f.grid[-1]))
    )
    logger.debug("Sampled quotient evaluated", extra={"n": len(f), "periodic": periodic, "Q": breakdown.Q})
    return breakdown

def parts_identity_residual(f: SampledFunction, periodic: bool) -> float:
    """|int u'' u^2 + 2 int u u'^2|, zero up to boundary terms"""
    u = f.values
    d1u = first_derivative(f, periodic)
    d2u = second_derivative(f, periodic)
    lhs = simpson(d2u * u * u, x=f.grid)
    rhs = 2.0 * simpson(u * d1u * d1u, x=f.grid)
    return float(abs(lhs + rhs))

def boundary_term(f: SampledFunction, periodic: bool = False) -> float:
    """[u' u^2] between the interval ends; the parts residual for non-periodic data"""
    d1u = first_derivative(f, periodic)
    return float(d1u[-1] * f.values[-1] ** 2 - d1u[0] * f.values[0] ** 2)

def rescale(f: SampledFunction, sigma: float) -> SampledFunction:
    """x -> sigma^2 u(sigma x), sampled on the grid divided by sigma"""
    validate_positive("sigma", sigma)
    return SampledFunction(
        grid=f.grid / sigma,
        values=sigma ** 2 * f.values,
        derivs=None if f.derivs is None else sigma ** 4 * f.derivs
    )

def nehari_optimal_mu(b: FunctionalBreakdown) -> float:
    """mu with mu^(7/4) = B / (2A), the minimizer of mu^(7/2) A - mu^(7/4) B"""
    if not b.A > 0 or not b.B > 0:
        raise NehariError(
            message="Nehari normalization undefined: needs A > 0 and B > 0",
            details={"A": b.A, "B": b.B}
        )
    return float((b.B / (2.0 * b.A)) ** (4.0 / 7.0))

def nehari_rescale(f: SampledFunction, mu: float) -> SampledFunction:
    """x -> mu^(1/4) u(mu x); keeps int u^4, scales A by mu^(7/2) and B by mu^(7/4)"""
    validate_positive("mu", mu)
    amplitude = mu ** 0.25
    return SampledFunction(
        grid=f.grid / mu,
        values=amplitude * f.values,
        derivs=None if f.derivs is None else amplitude * mu ** 2 * f.derivs
    )

def square_completion_margin(b: FunctionalBreakdown) -> float:
    """A - B + C/4 = int |u'' - u^2/2|^2, nonnegative up to quadrature error"""
    return b.A - b.B + 0.25 * b.C
