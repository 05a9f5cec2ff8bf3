"""Scalar search routines used by the shooting drivers"""
import math
from typing import Callable, NamedTuple, Tuple

from core.exceptions import BracketError, ShootingError
from core.logging import get_logger

logger = get_logger(__name__)

INV_PHI = 2.0 / (1.0 + math.sqrt(5.0))

class GoldenResult(NamedTuple):
    argmin: float
    minimum: float
    evaluations: int

class RootResult(NamedTuple):
    root: float
    lo: float
    hi: float
    g_lo: float
    g_hi: float
    iterations: int

def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-8,
    max_iter: int = 200
) -> GoldenResult:
    """
    Minimize f on [lo, hi] by golden-section search.

    Ties keep the left (smaller) point. Infeasible points may return +inf.
    """
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    evaluations = 2
    best_x, best_f = (x1, f1) if f1 <= f2 else (x2, f2)

    while hi - lo > tol and evaluations < max_iter:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
            if f1 <= best_f:
                best_x, best_f = x1, f1
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
            if f2 < best_f:
                best_x, best_f = x2, f2
        evaluations += 1

    return GoldenResult(argmin=best_x, minimum=best_f, evaluations=evaluations)

def bracketed_root(
    g: Callable[[float], Tuple[float, float]],
    lo: float,
    hi: float,
    g_lo: float,
    g_hi: float,
    tol: float,
    max_iter: int = 60,
    falsi_width: float = 1e-2
) -> RootResult:
    """
    Shrink a sign-changing bracket until hi - lo <= tol.

    Bisection throughout; once the bracket is narrower than falsi_width the probe is the
    Illinois regula-falsi point (the retained end's value is halved on repeats).

    g returns (x, g(x)) for the point it actually evaluated, which may differ from the
    requested probe but must stay strictly inside the current bracket.
    """
    if g_lo * g_hi > 0:
        raise BracketError(
            message="bracket invalid: no sign change",
            details={"lo": lo, "hi": hi, "g_lo": g_lo, "g_hi": g_hi}
        )
    if g_lo == 0.0:
        return RootResult(lo, lo, lo, g_lo, g_lo, 0)
    if g_hi == 0.0:
        return RootResult(hi, hi, hi, g_hi, g_hi, 0)

    w_lo, w_hi = g_lo, g_hi
    retained = 0  # -1 lo kept twice, +1 hi kept twice
    iterations = 0
    while hi - lo > tol and iterations < max_iter:
        iterations += 1
        if hi - lo < falsi_width:
            mid = hi - w_hi * (hi - lo) / (w_hi - w_lo)
            if not lo < mid < hi:
                mid = 0.5 * (lo + hi)
        else:
            mid = 0.5 * (lo + hi)

        requested = mid
        mid, g_mid = g(requested)
        if not lo < mid < hi:
            raise ShootingError(
                message="probe moved outside the bracket",
                details={"requested": requested, "evaluated": mid, "lo": lo, "hi": hi}
            )
        logger.debug("Root iteration", extra={"iteration": iterations, "lambda": mid, "g": g_mid})
        if g_mid == 0.0:
            return RootResult(mid, mid, mid, g_mid, g_mid, iterations)

        if g_mid * g_lo < 0:
            hi, g_hi, w_hi = mid, g_mid, g_mid
            if retained == -1:
                w_lo *= 0.5
            retained = -1
        else:
            lo, g_lo, w_lo = mid, g_mid, g_mid
            if retained == 1:
                w_hi *= 0.5
            retained = 1

    if hi - lo > tol:
        logger.warning("Root iteration cap reached", extra={"width": hi - lo, "iterations": iterations})

    # report the end with the smaller residual
    root = lo if abs(g_lo) <= abs(g_hi) else hi
    return RootResult(root, lo, hi, g_lo, g_hi, iterations)
