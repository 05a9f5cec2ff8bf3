"""
Shooting drivers for the sharp constant.

Two schemes share the same single shot. J(lambda) minimizes the half-period quotient
over the launch parameter a; J_tilde(lambda) fixes a = sqrt(lambda). The constant is
I = -lambda at the root of g(lambda) = J_tilde(lambda) + lambda.
"""
import math
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.config import settings, NEG_QUARTER, NINE_64
from core.exceptions import (
    BaseOsciminError,
    BracketError,
    IntegrationError,
    NoAdmissibleShotError,
    ShootingError,
    ValidationError
)
from core.logging import get_logger
from models.functionals import MinimizerProfile
from models.ode import D2U, D3U, DU, U, IntegratorConfig, TerminationReason
from models.shooting import InfimumResult, ShotResult, ShotStatus, SweepRow
from services.functionals import breakdown_from_trajectory
from services.ode_core import first_critical_point, first_integral
from utils.numerics import bracketed_root, golden_section
from utils.validators import validate_bracket, validate_open_interval, validate_positive

logger = get_logger(__name__)

def _check_lambda(lam: float, lower: float = 0.0) -> None:
    validate_open_interval("lambda", lam, lower, -NEG_QUARTER)

def shoot(a: float, lam: float, cfg: IntegratorConfig) -> ShotResult:
    """Launch u(0)=1, u'(0)=0, u''(0)=-a, u'''(0)=0 and measure the quotient on (0, T)"""
    validate_positive("a", a)
    _check_lambda(lam)

    try:
        T, traj = first_critical_point(a, lam, cfg)
    except IntegrationError as e:
        # step underflow only happens on the way to a singularity
        logger.warning("Shot stopped by the integrator", extra={"a": a, "lambda": lam, "error": e.message})
        return ShotResult(a=a, lam=lam, status=ShotStatus.BLOWUP, termination=None)

    if T is None:
        reason = traj.meta.termination
        status = ShotStatus.BLOWUP if reason == TerminationReason.BLOWUP else ShotStatus.NO_CRITICAL_POINT
        logger.debug("Shot without critical point", extra={"a": a, "lambda": lam, "status": status.value})
        return ShotResult(a=a, lam=lam, status=status, termination=reason, trajectory=traj)

    breakdown = breakdown_from_trajectory(traj, T)
    return ShotResult(
        a=a,
        lam=lam,
        T=T,
        breakdown=breakdown,
        status=ShotStatus.FOUND,
        termination=traj.meta.termination,
        trajectory=traj
    )

def j_tilde(lam: float, cfg: IntegratorConfig) -> ShotResult:
    """The shot with a = sqrt(lambda)"""
    _check_lambda(lam)
    return shoot(math.sqrt(lam), lam, cfg)

def g_of_lambda(lam: float, cfg: IntegratorConfig) -> Tuple[Optional[float], ShotResult]:
    """J_tilde(lambda) + lambda, None when the shot fails"""
    shot = j_tilde(lam, cfg)
    return (shot.Q + lam if shot.found else None), shot

def j_of_lambda(
    lam: float,
    cfg: IntegratorConfig,
    scan_lo: float = settings.A_SCAN_LO,
    scan_hi: float = settings.A_SCAN_HI,
    scan_points: int = settings.A_SCAN_POINTS,
    a_tol: float = settings.A_TOL
) -> Tuple[float, ShotResult]:
    """
    Minimize a -> Q(shoot(a, lambda)) over the admissible launches.

    A log-spaced scan brackets the best admissible a; golden-section search then refines
    it inside the neighbouring scan points. Failed shots count as +inf.

    Returns:
        (a_star, shot at a_star)

    Raises:
        NoAdmissibleShotError: no scanned a reaches a critical point
    """
    _check_lambda(lam, lower=NINE_64)
    shots: Dict[float, ShotResult] = {}

    def objective(a: float) -> float:
        if a not in shots:
            shots[a] = shoot(a, lam, cfg)
        shot = shots[a]
        return shot.Q if shot.found else math.inf

    grid = np.geomspace(scan_lo, scan_hi, scan_points)
    values = np.array([objective(float(a)) for a in grid])
    logger.debug(
        "Launch scan",
        extra={"lambda": lam, "a": grid.tolist(), "Q": [v if np.isfinite(v) else None for v in values]}
    )
    if not np.any(np.isfinite(values)):
        raise NoAdmissibleShotError(
            message=f"no admissible shot at lambda={lam:g}",
            details={"lambda": lam, "a_range": (scan_lo, scan_hi), "points": scan_points}
        )

    i = int(np.argmin(values))
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, grid.size - 1)])
    best = golden_section(objective, lo, hi, tol=a_tol)

    a_star, q_star = best.argmin, best.minimum
    if values[i] < q_star or (values[i] == q_star and grid[i] < a_star):
        a_star, q_star = float(grid[i]), float(values[i])

    logger.info(
        "Inner minimization finished",
        extra={"lambda": lam, "a_star": a_star, "J": q_star, "shots": len(shots)}
    )
    return a_star, shots[a_star]

def scan_sign_change(
    lambdas: Sequence[float],
    cfg: IntegratorConfig
) -> List[Tuple[float, Optional[float], str]]:
    """g on a lambda grid as (lambda, g or None, shot status)"""
    rows = []
    for lam in lambdas:
        g, shot = g_of_lambda(float(lam), cfg)
        rows.append((float(lam), g, shot.status.value))
    return rows

def _sign_brackets(rows: List[Tuple[float, Optional[float], str]]) -> List[Tuple[float, float]]:
    found = [(lam, g) for lam, g, _ in rows if g is not None]
    return [(l1, l2) for (l1, g1), (l2, g2) in zip(found, found[1:]) if g1 * g2 <= 0]

def find_infimum(
    cfg: IntegratorConfig,
    bracket: Tuple[float, float] = (settings.BRACKET_LO, settings.BRACKET_HI),
    root_tol: float = settings.ROOT_TOL,
    max_iter: int = settings.ROOT_MAX_ITER,
    retract_step: float = settings.RETRACT_STEP,
    cross_validate: bool = True
) -> InfimumResult:
    """
    Solve J_tilde(lambda) + lambda = 0 on the bracket and return I = -lambda_root.

    A failed shot at a bracket end is retried once at the end moved inward by retract_step;
    a failed probe inside the bracket is retried once moved toward the lower end.
    """
    lo, hi = bracket
    validate_bracket(lo, hi)
    _check_lambda(lo)
    _check_lambda(hi)
    shots: Dict[float, ShotResult] = {}

    def evaluate(lam: float, fallback: float) -> Tuple[float, float]:
        for probe in (lam, fallback):
            g, shot = g_of_lambda(probe, cfg)
            if g is not None:
                shots[probe] = shot
                if probe != lam:
                    logger.warning("Shot retried at a moved lambda", extra={"lambda": lam, "retried": probe})
                return probe, g
            logger.warning(
                "Shot failed during root solve",
                extra={"lambda": probe, "status": shot.status.value}
            )
        raise ShootingError(
            message=f"shot failed at lambda={lam:g} and at the retry lambda={fallback:g}",
            details={"lambda": lam, "retry": fallback}
        )

    lo, g_lo = evaluate(lo, lo + retract_step)
    hi, g_hi = evaluate(hi, hi - retract_step)
    logger.info("Bracket evaluated", extra={"lo": lo, "hi": hi, "g_lo": g_lo, "g_hi": g_hi})

    if g_lo * g_hi > 0:
        rows = scan_sign_change(np.linspace(lo, hi, 9), cfg)
        raise BracketError(
            message=f"bracket invalid: g has one sign on ({lo:g}, {hi:g})",
            details={"g_lo": g_lo, "g_hi": g_hi, "scan": rows, "sign_changes": _sign_brackets(rows)}
        )

    current = {"lo": lo}

    def probe(lam: float) -> Tuple[float, float]:
        # the retry point stays strictly above the current lower end
        x, g = evaluate(lam, lam - min(retract_step, 0.25 * (lam - current["lo"])))
        if g * g_lo > 0:
            current["lo"] = x
        return x, g

    root = bracketed_root(
        probe, lo, hi, g_lo, g_hi,
        tol=root_tol,
        max_iter=max_iter,
        falsi_width=settings.REGULA_FALSI_WIDTH
    )
    shot = shots[root.root]
    result = InfimumResult(
        I_value=-root.root,
        lam=root.root,
        shot=shot,
        bracket=(root.lo, root.hi),
        iterations=root.iterations
    )
    logger.info(
        "Root found",
        extra={"I": result.I_value, "T": shot.T, "iterations": root.iterations, "width": root.hi - root.lo}
    )

    if cross_validate:
        try:
            a_star, j_shot = j_of_lambda(root.root, cfg)
            result = result.model_copy(update={"a_star": a_star, "J": j_shot.Q})
        except BaseOsciminError as e:
            logger.warning("Inner minimization failed at the root", extra={"error": e.message})
        else:
            gap = result.method_gap
            if gap is not None and gap > 10.0 * root_tol:
                logger.warning("J and J_tilde differ at the root", extra={"gap": gap, "root_tol": root_tol})
    return result

def minimizer_profile(shot: ShotResult, n_samples: int = settings.PROFILE_SAMPLES) -> MinimizerProfile:
    """
    One full period [-T, T] of the even extension of a found shot.

    u and u'' are even, u' and u''' odd. The first-integral residual uses I = -lambda.
    """
    if not shot.found or shot.trajectory is None:
        raise ValidationError(
            message="profile needs a found shot with its trajectory",
            details={"status": shot.status.value}
        )
    if n_samples < 5:
        raise ValidationError(message="profile needs at least 5 samples", details={"n_samples": n_samples})

    T = float(shot.T)
    grid = np.linspace(-T, T, n_samples)
    grid = 0.5 * (grid - grid[::-1])  # exact mirror symmetry, x = 0 hit for odd n
    states = shot.trajectory.evaluate(np.clip(np.abs(grid), 0.0, T))
    parity = np.sign(grid)

    u = states[U]
    du = parity * states[DU]
    d2u = states[D2U]
    d3u = parity * states[D3U]
    residual = first_integral(np.vstack([u, du, d2u, d3u]), -shot.lam)

    return MinimizerProfile(
        grid=grid,
        values=u,
        derivs=d2u,
        du=du,
        d3u=d3u,
        h_residual=residual,
        I_value=-shot.lam,
        T=T,
        a=shot.a
    )

def sweep_row(lam: float, cfg: IntegratorConfig) -> SweepRow:
    """Both schemes at one lambda; failures are recorded in the row's status"""
    row = {"lam": lam}
    problems = []

    try:
        a_star, shot = j_of_lambda(lam, cfg)
        row.update(a_star=a_star, T1=shot.T, J=shot.Q)
    except BaseOsciminError as e:
        problems.append(f"J: {e.message}")

    try:
        shot = j_tilde(lam, cfg)
        if shot.found:
            row.update(T2=shot.T, J_tilde=shot.Q, g=shot.Q + lam)
        else:
            problems.append(f"J_tilde: {shot.status.value}")
    except BaseOsciminError as e:
        problems.append(f"J_tilde: {e.message}")

    if problems:
        logger.warning("Sweep row incomplete", extra={"lambda": lam, "problems": problems})
    return SweepRow(**row, status="; ".join(problems) if problems else "ok")
