"""
Gaussian heat-kernel bounds with explicit constants.

Every family is assembled in log space so that exponents d^2/4t up to 1e6
neither overflow nor underflow; `BoundValue.value` is exp of `log_value`.
"""

import math
import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.errors import DomainError, require_nonnegative, require_positive
from core.geometry import (
    ModelManifold, distance, log_ball_volume, log_euclidean_ball_volume,
)
from core.utils import safe_exp

logger = logging.getLogger(__name__)

FLAG_SYMMETRIC = 'symmetric'
FLAG_ILLUSTRATIVE = 'illustrative'
FLAG_DEGENERATE = 'degenerate'


class BoundValue(NamedTuple):
    """An evaluated bound together with the building blocks that produced it."""
    value: float
    log_value: float
    family: str
    inputs: Dict[str, float]
    R: Optional[float] = None
    T: Optional[float] = None
    f: Optional[float] = None
    volume_x: Optional[float] = None
    volume_y: Optional[float] = None
    euclidean_volume: Optional[float] = None
    exponent: Optional[float] = None
    flags: Tuple[str, ...] = ()


class LowerTime(NamedTuple):
    value: float
    degenerate: bool


class LiYauConstants(NamedTuple):
    """C(delta) = c1 exp(c2 / delta); the constants are not known explicitly."""
    c1: float = 1.0
    c2: float = 1.0
    delta: float = 0.5

    def validate(self) -> 'LiYauConstants':
        require_positive("c1", self.c1)
        require_positive("c2", self.c2)
        if not 0 < self.delta < 1:
            raise DomainError(f"Li-Yau delta must lie in (0, 1), got {self.delta}")
        return self

    def log_c(self) -> float:
        return math.log(self.c1) + self.c2 / self.delta


class ChainLink(NamedTuple):
    """One expression of a chain; relation compares the previous link to this one."""
    label: str
    value: float
    log_value: float
    relation: str


class BoundChain(NamedTuple):
    name: str
    side: str
    links: Tuple[ChainLink, ...]

    def link_margins(self) -> List[float]:
        """Relative slack of each stated step; negative means the step fails."""
        margins = []
        for previous, link in zip(self.links, self.links[1:]):
            gap = link.log_value - previous.log_value
            if link.relation == '<=':
                margins.append(-math.expm1(-gap))
            elif link.relation == '>=':
                margins.append(-math.expm1(gap))
            else:
                margins.append(-abs(math.expm1(gap)))
        return margins


class Delta1Chains(NamedTuple):
    lower: BoundChain
    lower_symmetric: BoundChain
    upper: BoundChain
    upper_symmetric: BoundChain

    def all(self) -> Tuple[BoundChain, ...]:
        return (self.lower, self.lower_symmetric, self.upper, self.upper_symmetric)


class TightnessComparison(NamedTuple):
    rho: float
    log_new_gap: float
    log_li_yau_gap: float

    @property
    def new_is_tighter(self) -> bool:
        return self.log_new_gap < self.log_li_yau_gap


def _check_times(t: float, delta: float):
    require_positive("t", t)
    require_positive("delta", delta)


def r_delta(d: float, t: float, delta: float) -> float:
    """Positive root R of R^2 + d R = delta t, in cancellation-free form."""
    require_nonnegative("d", d)
    _check_times(t, delta)
    return 2.0 * delta * t / (math.hypot(d, 2.0 * math.sqrt(delta * t)) + d)


def t_lower(d: float, t: float, delta: float) -> LowerTime:
    """T = d t / sqrt(d^2 + 4 delta t); at d = 0 the limit 0 is returned flagged."""
    require_nonnegative("d", d)
    _check_times(t, delta)
    if d == 0:
        return LowerTime(0.0, True)
    return LowerTime(d * t / math.hypot(d, 2.0 * math.sqrt(delta * t)), False)


def t_upper(d: float, t: float, delta: float) -> float:
    require_nonnegative("d", d)
    _check_times(t, delta)
    if d * d <= 4.0 * delta * t / 3.0:
        return (1.0 + math.sqrt(delta)) * t
    return math.sqrt(1.0 + 4.0 * delta * t / (d * d)) * t


def log_f_factor(delta: float, rho: float, n: float) -> float:
    require_positive("delta", delta)
    require_nonnegative("rho", rho)
    if rho <= delta / 3.0:
        return math.sqrt(delta) + delta / 3.0 + 0.5 * n * math.log1p(math.sqrt(delta))
    return 2.0 * delta + 0.25 * n * math.log1p(delta / rho)


def f_factor(delta: float, rho: float, n: float) -> float:
    """Piecewise polynomial-loss factor of the upper bound; always >= 1."""
    return safe_exp(log_f_factor(delta, rho, n))


def _log_volumes(m: ModelManifold, x, y, r: float, tol: ToleranceConfig) -> Tuple[float, float]:
    m.validate_point(x)
    m.validate_point(y)
    return log_ball_volume(m, r, tol), log_ball_volume(m, r, tol)


def _value(log_value: float, family: str, **fields) -> BoundValue:
    return BoundValue(value=safe_exp(log_value), log_value=log_value, family=family, **fields)


def lower_bound(m: ModelManifold, x, y, t: float, delta: float, symmetric: bool = False,
                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> BoundValue:
    """Gaussian lower bound without the delta-loss in the exponent."""
    _check_times(t, delta)
    n = m.dimension
    d = distance(m, x, y)
    R = r_delta(d, t, delta)
    log_vx, log_vy = _log_volumes(m, x, y, R, tol)
    log_volume = 0.5 * (log_vx + log_vy) if symmetric else log_vx
    log_euclidean = log_euclidean_ball_volume(n, R)
    log_value = (-delta + log_euclidean - log_volume
                 - 0.5 * n * math.log(4.0 * math.pi * t) - d * d / (4.0 * t))
    return _value(
        log_value, 'lower_symmetric' if symmetric else 'lower',
        inputs={'d': d, 't': t, 'delta': delta},
        R=R, volume_x=safe_exp(log_vx), volume_y=safe_exp(log_vy),
        euclidean_volume=safe_exp(log_euclidean),
        flags=(FLAG_SYMMETRIC,) if symmetric else (),
    )


def lower_bound_general(m: ModelManifold, x, y, t: float, R: float, T: float,
                        tol: ToleranceConfig = DEFAULT_TOLERANCES) -> BoundValue:
    """Lower bound for any admissible radius R and earlier time T."""
    require_positive("t", t)
    require_positive("R", R)
    require_positive("T", T)
    if T >= t:
        raise DomainError(f"T must be smaller than t, got T={T}, t={t}")
    n = m.dimension
    d = distance(m, x, y)
    log_vx, log_vy = _log_volumes(m, x, y, R, tol)
    log_euclidean = log_euclidean_ball_volume(n, R)
    exponent = -R * R / (t - T) - d * d / (4.0 * T)
    log_value = (0.5 * n * math.log(T / t) + exponent + log_euclidean - log_vx
                 - 0.5 * n * math.log(4.0 * math.pi * T))
    return _value(
        log_value, 'lower_general',
        inputs={'d': d, 't': t, 'R': R, 'T': T},
        R=R, T=T, volume_x=safe_exp(log_vx), volume_y=safe_exp(log_vy),
        euclidean_volume=safe_exp(log_euclidean), exponent=exponent,
    )


def upper_bound(m: ModelManifold, x, y, t: float, delta: float, symmetric: bool = False,
                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> BoundValue:
    """Gaussian upper bound with the polynomial factor f(delta, d^2/4t)."""
    _check_times(t, delta)
    n = m.dimension
    d = distance(m, x, y)
    rho = d * d / (4.0 * t)
    R = r_delta(d, t, delta)
    log_f = log_f_factor(delta, rho, n)
    log_vx, log_vy = _log_volumes(m, x, y, R, tol)
    log_euclidean = log_euclidean_ball_volume(n, R)
    if symmetric:
        log_value = (delta + 2.0 * log_f + 0.5 * n * math.log(4.0 * math.pi * t)
                     - log_euclidean - log_vx - rho)
    else:
        log_value = log_f - 0.5 * (log_vx + log_vy) - rho
    return _value(
        log_value, 'upper_symmetric' if symmetric else 'upper',
        inputs={'d': d, 't': t, 'delta': delta},
        R=R, T=t_upper(d, t, delta), f=safe_exp(log_f),
        volume_x=safe_exp(log_vx), volume_y=safe_exp(log_vy),
        euclidean_volume=safe_exp(log_euclidean),
        flags=(FLAG_SYMMETRIC,) if symmetric else (),
    )


def upper_bound_general(m: ModelManifold, x, y, t: float, R: float, T: float,
                        tol: ToleranceConfig = DEFAULT_TOLERANCES) -> BoundValue:
    """Upper bound for any radius R and later time T, before choosing them."""
    require_positive("t", t)
    require_positive("R", R)
    if T <= t:
        raise DomainError(f"T must exceed t, got T={T}, t={t}")
    n = m.dimension
    d = distance(m, x, y)
    rho = d * d / (4.0 * t)
    separation = max(d - 2.0 * R, 0.0)
    exponent = R * R / (T - t) + rho - separation * separation / (4.0 * T)
    log_vx, log_vy = _log_volumes(m, x, y, R, tol)
    log_value = 0.5 * n * math.log(T / t) + exponent - 0.5 * (log_vx + log_vy) - rho
    return _value(
        log_value, 'upper_general',
        inputs={'d': d, 't': t, 'R': R, 'T': T},
        R=R, T=T, volume_x=safe_exp(log_vx), volume_y=safe_exp(log_vy),
        euclidean_volume=safe_exp(log_euclidean_ball_volume(n, R)), exponent=exponent,
    )


def li_yau_bounds(m: ModelManifold, x, y, t: float,
                  consts: LiYauConstants = LiYauConstants(),
                  tol: ToleranceConfig = DEFAULT_TOLERANCES) -> Tuple[BoundValue, BoundValue]:
    """Classical two-sided bounds with the delta-loss; always flagged illustrative."""
    consts.validate()
    require_positive("t", t)
    d = distance(m, x, y)
    m.validate_point(x)
    log_v = log_ball_volume(m, math.sqrt(t), tol)
    log_c = consts.log_c()
    inputs = {'d': d, 't': t, 'delta': consts.delta, 'c1': consts.c1, 'c2': consts.c2}
    lower = _value(-log_c - log_v - d * d / (4.0 * (1.0 - consts.delta) * t),
                   'li_yau_lower', inputs=inputs, volume_x=safe_exp(log_v),
                   flags=(FLAG_ILLUSTRATIVE,))
    upper = _value(log_c - log_v - d * d / (4.0 * (1.0 + consts.delta) * t),
                   'li_yau_upper', inputs=inputs, volume_x=safe_exp(log_v),
                   flags=(FLAG_ILLUSTRATIVE,))
    return lower, upper


def _link(label: str, log_value: float, relation: str) -> ChainLink:
    return ChainLink(label, safe_exp(log_value), log_value, relation)


def bounds_delta1(m: ModelManifold, x, y, t: float,
                  tol: ToleranceConfig = DEFAULT_TOLERANCES) -> Delta1Chains:
    """The delta = 1 specialisations, each step of each chain as a separate link."""
    require_positive("t", t)
    n = m.dimension
    d = distance(m, x, y)
    rho = d * d / (4.0 * t)
    R = r_delta(d, t, 1.0)
    log_s = math.log(math.sqrt(rho + 1.0) + math.sqrt(rho))
    log_vx_r, log_vy_r = _log_volumes(m, x, y, R, tol)
    log_vx_t, log_vy_t = _log_volumes(m, x, y, math.sqrt(t), tol)
    log_omega = log_euclidean_ball_volume(n, 1.0)
    log_gauss = -0.5 * n * math.log(4.0 * math.pi * t) - rho
    half_n = 0.5 * n

    poly_lower = log_omega - 1.0 - half_n * math.log(4.0 * math.pi) - n * log_s - rho
    lower = BoundChain('lower_delta1', 'lower', (
        _link('exact_volume_ratio',
              log_euclidean_ball_volume(n, R) - 1.0 - log_vx_r + log_gauss, 'start'),
        _link('polynomial_loss', poly_lower - log_vx_t, '>='),
    ))
    lower_symmetric = BoundChain('lower_delta1_symmetric', 'lower', (
        _link('exact_volume_ratio',
              log_euclidean_ball_volume(n, R) - 1.0 - 0.5 * (log_vx_r + log_vy_r) + log_gauss,
              'start'),
        _link('polynomial_loss', poly_lower - 0.5 * (log_vx_t + log_vy_t), '>='),
    ))

    log_const = half_n * math.log(2.0) + 2.0
    upper = BoundChain('upper_delta1', 'upper', (
        _link('upper_bound_delta1', upper_bound(m, x, y, t, 1.0, tol=tol).log_value, 'start'),
        _link('radius_volumes', log_const - 0.5 * (log_vx_r + log_vy_r) - rho, '<='),
        _link('bishop_rescaled', log_const + n * math.log(math.sqrt(t) / R)
              - 0.5 * (log_vx_t + log_vy_t) - rho, '<='),
        _link('polynomial_loss', log_const + n * log_s - 0.5 * (log_vx_t + log_vy_t) - rho, '='),
    ))

    log_sym = 5.0 - log_omega + half_n * math.log(16.0 * math.pi)
    upper_symmetric = BoundChain('upper_delta1_symmetric', 'upper', (
        _link('upper_bound_delta1',
              upper_bound(m, x, y, t, 1.0, symmetric=True, tol=tol).log_value, 'start'),
        _link('radius_volumes', 5.0 + n * math.log(2.0) + half_n * math.log(4.0 * math.pi * t)
              - log_euclidean_ball_volume(n, R) - log_vx_r - rho, '<='),
        _link('polynomial_loss', log_sym + n * log_s - log_vx_r - rho, '='),
        _link('bishop_rescaled', log_sym + 2.0 * n * log_s - log_vx_t - rho, '<='),
    ))
    return Delta1Chains(lower, lower_symmetric, upper, upper_symmetric)


def tightness_comparison(m: ModelManifold, x, y, t: float,
                         consts: LiYauConstants = LiYauConstants(),
                         tol: ToleranceConfig = DEFAULT_TOLERANCES) -> TightnessComparison:
    """Compare log(upper/lower) of the delta = 1 bounds against the Li-Yau pair."""
    d = distance(m, x, y)
    lower = lower_bound(m, x, y, t, 1.0, tol=tol)
    upper = upper_bound(m, x, y, t, 1.0, tol=tol)
    li_lower, li_upper = li_yau_bounds(m, x, y, t, consts, tol)
    return TightnessComparison(
        rho=d * d / (4.0 * t),
        log_new_gap=upper.log_value - lower.log_value,
        log_li_yau_gap=li_upper.log_value - li_lower.log_value,
    )
