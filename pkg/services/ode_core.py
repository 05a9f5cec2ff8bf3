"""Euler-Lagrange system, adaptive integration and critical-point location"""
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from core.exceptions import IntegrationError, ValidationError
from core.logging import get_logger
from models.ode import (
    D2U,
    D3U,
    DU,
    U,
    PhaseState,
    IntegratorConfig,
    Trajectory,
    TrajectoryMeta,
    TerminationReason,
    PHASE_DIM,
    STATE_DIM
)
from utils.validators import validate_positive

logger = get_logger(__name__)

def el_rhs_vector(y: np.ndarray, lam: float) -> np.ndarray:
    """
    Right-hand side of the augmented system.

    Phase part: u'''' = 2 u u'' + u'^2 - 2 lam |u|^2 u.
    Accumulator rates: u''^2, u'' u^2, u^4, u u'^2.
    """
    u, du, d2u, d3u = y[0], y[1], y[2], y[3]
    u2 = u * u
    return np.array([
        du,
        d2u,
        d3u,
        2.0 * u * d2u + du * du - 2.0 * lam * u2 * u,
        d2u * d2u,
        d2u * u2,
        u2 * u2,
        u * du * du
    ])

def first_integral(y: np.ndarray, I_value: float) -> np.ndarray:
    """u' u''' - u''^2/2 - u'^2 u - I u^4/2 for phase rows y[0:4] (scalar or per column)"""
    u, du, d2u, d3u = y[U], y[DU], y[D2U], y[D3U]
    return du * d3u - 0.5 * d2u * d2u - du * du * u - 0.5 * I_value * u ** 4

def el_rhs(s: PhaseState, lam: float) -> np.ndarray:
    """Derivative of the augmented state at phase state s (8 components)"""
    if not np.isfinite(lam):
        raise ValidationError(message="lambda must be finite", details={"lambda": lam})
    return el_rhs_vector(s.as_array(), lam)

def _fun(x: float, y: np.ndarray, lam: float) -> np.ndarray:
    return el_rhs_vector(y, lam)

def _blowup_event(threshold: float) -> Callable:
    def blowup(x: float, y: np.ndarray, lam: float) -> float:
        return threshold - abs(y[U])
    blowup.terminal = True
    return blowup

def _critical_point_event(min_x: float) -> Callable:
    # u' crosses from negative to positive; the launch point u'(0)=0 is masked
    def critical_point(x: float, y: np.ndarray, lam: float) -> float:
        return y[DU] if x > min_x else -1.0
    critical_point.terminal = True
    critical_point.direction = 1.0
    return critical_point

def _solve(
    init: PhaseState,
    lam: float,
    cfg: IntegratorConfig,
    stop_at_critical_point: bool
) -> Tuple[Trajectory, Optional[float]]:
    """Run solve_ivp and package the result; returns the trajectory and the event position"""
    if not np.isfinite(lam):
        raise ValidationError(message="lambda must be finite", details={"lambda": lam})
    if init.x >= cfg.x_max:
        raise ValidationError(
            message="initial position must lie before the horizon",
            details={"x0": init.x, "x_max": cfg.x_max}
        )

    y0 = np.concatenate([init.as_array(), np.zeros(STATE_DIM - PHASE_DIM)])
    events: List[Callable] = [_blowup_event(cfg.blowup_threshold)]
    if stop_at_critical_point:
        events.append(_critical_point_event(init.x + cfg.min_event_x))

    sol = solve_ivp(
        _fun,
        (init.x, cfg.x_max),
        y0,
        method=cfg.method,
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.max_step,
        dense_output=True,
        events=events,
        args=(lam,)
    )

    if sol.status == -1:
        last = PhaseState.from_array(sol.t[-1], sol.y[:, -1])
        logger.warning(
            "Integration stopped: step size underflow",
            extra={"lambda": lam, "x": float(sol.t[-1]), "solver_message": sol.message}
        )
        raise IntegrationError(
            message=f"step size underflow at x={sol.t[-1]:.6g}: {sol.message}",
            details={"lambda": lam, "last_state": last.model_dump()}
        )

    event_x: Optional[float] = None
    if sol.status == 1 and sol.t_events[0].size > 0:
        termination = TerminationReason.BLOWUP
    elif sol.status == 1:
        termination = TerminationReason.EVENT
        event_x = float(sol.t_events[1][0])
    else:
        termination = TerminationReason.HORIZON

    x, y = _strict_grid(sol.t, sol.y)
    steps = np.diff(x)
    traj = Trajectory(
        x=x,
        y=y,
        lam=lam,
        meta=TrajectoryMeta(
            n_steps=int(steps.size),
            n_rhs=int(sol.nfev),
            min_step=float(steps.min()) if steps.size else 0.0,
            max_step=float(steps.max()) if steps.size else 0.0,
            termination=termination
        ),
        dense=sol.sol
    )
    logger.debug(
        "Integration finished",
        extra={"lambda": lam, "termination": termination.value, "n_steps": traj.meta.n_steps, "x_end": traj.x_hi}
    )
    return traj, event_x

def _strict_grid(x: np.ndarray, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # an event landing on an accepted step repeats the position
    keep = np.concatenate([[True], np.diff(x) > 0])
    return x[keep], y[:, keep]

def integrate(init: PhaseState, lam: float, cfg: IntegratorConfig) -> Trajectory:
    """Integrate from init.x to the horizon or to blow-up, whichever comes first"""
    traj, _ = _solve(init, lam, cfg, stop_at_critical_point=False)
    return traj

def first_critical_point(
    a: float,
    lam: float,
    cfg: IntegratorConfig
) -> Tuple[Optional[float], Trajectory]:
    """
    Locate T(a, lam), the first positive zero of u' for the shooting launch.

    Returns (T, trajectory truncated at T) when u' changes sign before the horizon,
    otherwise (None, trajectory) with the termination reason in trajectory.meta.
    """
    validate_positive("a", a)

    traj, event_x = _solve(PhaseState.launch(a), lam, cfg, stop_at_critical_point=True)
    if event_x is None:
        return None, traj

    T = _refine_event(traj, event_x, cfg)
    return T, traj

def _refine_event(traj: Trajectory, event_x: float, cfg: IntegratorConfig) -> float:
    """Tighten |u'(T)| to abs_tol by bisection on the bracketing step"""
    du_end = float(traj.y[DU, -1])
    if abs(du_end) <= cfg.abs_tol or traj.x.size < 2:
        return event_x

    x_prev = float(traj.x[-2])

    def du(x: float) -> float:
        return float(traj.evaluate(np.array([x]))[DU, 0])

    if du(x_prev) * du_end >= 0:
        logger.warning("Critical point not bracketed on the final step", extra={"u_prime_T": du_end})
        return event_x

    T = float(brentq(du, x_prev, event_x, xtol=cfg.event_xtol))
    if T <= x_prev:
        # root on the previous grid point, which becomes the end of the grid
        traj.x = traj.x[:-1]
        traj.y = traj.y[:, :-1]
        return x_prev
    traj.y[:, -1] = traj.evaluate(np.array([T]))[:, 0]
    traj.x[-1] = T
    return T
