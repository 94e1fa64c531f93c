"""
Constants and right-hand sides of the gradient and Laplacian estimates.

The sharp mode uses the distance-dependent coefficient
max{1/2, 2 / (1 + sqrt(1 + 4t/d^2))}; the alpha mode is the one-parameter
family it is derived from.
"""

import math
import logging
from typing import Dict, NamedTuple, Optional, Tuple

from scipy.special import gammaln

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.errors import DomainError, require_nonnegative, require_positive

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


class EstimateRHS(NamedTuple):
    """Coefficient multiplying the left side, and the right side itself."""
    lhs_coefficient: float
    rhs: float
    inputs: Dict[str, float]
    sharp: bool


def c_n(n: int) -> float:
    """C(n) = n/2 ln(8(n + sqrt(n^2+1))) + ln Gamma(n/2 + 1) + (5 - sqrt(n^2+1))/2."""
    if n < 1:
        raise DomainError(f"Dimension must be at least 1, got {n}")
    root = math.sqrt(n * n + 1.0)
    return 0.5 * n * math.log(8.0 * (n + root)) + float(gammaln(0.5 * n + 1.0)) + 0.5 * (5.0 - root)


def g_max(n: int) -> Tuple[float, float]:
    """
    Maximum of G(x) = (sqrt(1 + x^2) + x)^n exp(-x^2) over x >= 0.

    Returns:
        (maximum value, maximizer x^2)
    """
    if n < 1:
        raise DomainError(f"Dimension must be at least 1, got {n}")
    root = math.sqrt(n * n + 1.0)
    x_sq = 0.5 * (root - 1.0)
    return (root + n) ** (0.5 * n) * math.exp(-x_sq), x_sq


def g_function(n: int, x: float) -> float:
    return (math.sqrt(1.0 + x * x) + x) ** n * math.exp(-x * x)


def _rho(d: float, t: float) -> float:
    require_positive("t", t)
    require_nonnegative("d", d)
    return d * d / (4.0 * t)


def _log_s(rho: float) -> float:
    return math.log(math.sqrt(rho + 1.0) + math.sqrt(rho))


def alpha_star(d: float, t: float) -> float:
    """min{1/2, (sqrt(1 + rho) + sqrt(rho))^-2} with rho = d^2/4t."""
    return min(0.5, math.exp(-2.0 * _log_s(_rho(d, t))))


def one_minus_alpha_star(d: float, t: float) -> float:
    """max{1/2, 2 / (1 + sqrt(1 + 4t/d^2))}, evaluated directly."""
    require_positive("t", t)
    require_nonnegative("d", d)
    if d == 0:
        return 0.5
    return max(0.5, 2.0 / (1.0 + math.sqrt(1.0 + 4.0 * t / (d * d))))


def _check_alpha(alpha: float):
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")


def gradient_rhs(d: float, t: float, n: int, alpha: Optional[float] = None) -> EstimateRHS:
    """Right side of the gradient estimate; alpha=None selects the sharp form."""
    rho = _rho(d, t)
    log_s = _log_s(rho)
    inputs = {'d': d, 't': t, 'n': n}
    if alpha is None:
        rhs = c_n(n) + 0.5 * n * LN2 + 2.0 * n * log_s + rho
        return EstimateRHS(one_minus_alpha_star(d, t), rhs, inputs, True)
    _check_alpha(alpha)
    rhs = c_n(n) - 0.5 * n * math.log(alpha) + n * log_s + rho
    return EstimateRHS(1.0 - alpha, rhs, dict(inputs, alpha=alpha), False)


def laplacian_rhs(d: float, t: float, n: int, alpha: Optional[float] = None) -> EstimateRHS:
    """Right side of the Laplacian estimate (4 rho is the d^2/t term)."""
    rho = _rho(d, t)
    log_s = _log_s(rho)
    inputs = {'d': d, 't': t, 'n': n}
    if alpha is None:
        rhs = n + 4.0 * c_n(n) + 2.0 * n * LN2 + 8.0 * n * log_s + 4.0 * rho
        return EstimateRHS(one_minus_alpha_star(d, t), rhs, inputs, True)
    _check_alpha(alpha)
    rhs = n + 4.0 * c_n(n) - 2.0 * n * math.log(alpha) + 4.0 * n * log_s + 4.0 * rho
    return EstimateRHS(1.0 - alpha, rhs, dict(inputs, alpha=alpha), False)


def li_yau_gradient_rhs(n: int, t: float) -> float:
    return n / (2.0 * t)


def harnack_log_factor(n: int, t1: float, t2: float, d: float) -> float:
    """ln of (t2/t1)^(n/2) exp(d^2 / 4(t2 - t1))."""
    if not 0 < t1 < t2:
        raise DomainError(f"Harnack times must satisfy 0 < t1 < t2, got {t1}, {t2}")
    return 0.5 * n * math.log(t2 / t1) + d * d / (4.0 * (t2 - t1))


def hamilton_gradient_rhs(bound: float, u: float, t: float, curvature: float = 0.0) -> float:
    """(1 + 2Kt) ln(A/u) for a solution bounded by A on Ric >= -K."""
    require_nonnegative("K", curvature)
    return (1.0 + 2.0 * curvature * t) * math.log(bound / u)


def hamilton_laplacian_rhs(bound: float, u: float, n: int) -> float:
    return n + 4.0 * math.log(bound / u)


def check_classical(ineq: str, m, params=None, tol: ToleranceConfig = DEFAULT_TOLERANCES):
    """
    Evaluate one classical inequality on the reference kernels of m.

    Raises:
        UsageError: If the identifier is unknown or the check does not apply to m
    """
    from checks import get_check

    return get_check(ineq, m, params, tol).run()
