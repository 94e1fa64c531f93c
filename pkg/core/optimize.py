"""Choice of the free parameter delta in the Gaussian bounds."""

import math
import logging
from typing import Callable, NamedTuple, Tuple

import numpy as np

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.bounds import BoundValue, lower_bound, upper_bound
from core.errors import UsageError
from core.geometry import ModelManifold

logger = logging.getLogger(__name__)

DELTA_MIN = 1e-6
DELTA_MAX = 1e3
SCAN_POINTS = 401
SEARCH_TOL = 1e-6
INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

SIDES = ('lower', 'upper')


class DeltaOptimum(NamedTuple):
    delta: float
    value: float
    bound: BoundValue
    at_boundary: bool


def golden_section_min(f: Callable[[float], float], a: float, b: float,
                       tol: float = SEARCH_TOL, max_iter: int = 200) -> Tuple[float, float]:
    """
    Golden-section search for a minimum of f on [a, b].

    Returns:
        (x, f(x)) at the best point visited
    """
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if abs(b - a) <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def optimize_delta(m: ModelManifold, x, y, t: float, side: str,
                   tol: ToleranceConfig = DEFAULT_TOLERANCES,
                   symmetric: bool = False) -> DeltaOptimum:
    """
    Best delta in [1e-6, 1e3] for one side of the bounds.

    Maximizes the lower bound or minimizes the upper bound in ln(delta): a
    log-grid scan picks the best bracket, then golden-section search refines
    it. Unimodality is not assumed; the better of scan and refinement wins.
    """
    if side not in SIDES:
        raise UsageError(f"Side must be one of {SIDES}, got '{side}'")
    evaluate = lower_bound if side == 'lower' else upper_bound
    sign = -1.0 if side == 'lower' else 1.0

    def objective(log_delta: float) -> float:
        return sign * evaluate(m, x, y, t, math.exp(log_delta), symmetric, tol).log_value

    lo, hi = math.log(DELTA_MIN), math.log(DELTA_MAX)
    grid = np.linspace(lo, hi, SCAN_POINTS)
    scores = [objective(float(g)) for g in grid]
    best = int(np.argmin(scores))
    log_delta, score = float(grid[best]), scores[best]

    at_boundary = best in (0, SCAN_POINTS - 1)
    if not at_boundary:
        refined, refined_score = golden_section_min(
            objective, float(grid[best - 1]), float(grid[best + 1]), SEARCH_TOL)
        if refined_score < score:
            log_delta, score = refined, refined_score

    delta = math.exp(log_delta)
    bound = evaluate(m, x, y, t, delta, symmetric, tol)
    if at_boundary:
        logger.debug(f"Optimal delta for the {side} bound sits at the search boundary ({delta:g})")
    return DeltaOptimum(delta=delta, value=bound.value, bound=bound, at_boundary=at_boundary)
