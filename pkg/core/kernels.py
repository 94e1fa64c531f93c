"""
Reference heat kernels on the catalog manifolds.

Euclidean kernels are closed-form Gaussians. The circle kernel is a theta
function evaluated either as a sum over images (small t) or as a Fourier
series (large t); the sphere kernel is the Legendre series. Derivatives are
obtained by differentiating the series term by term, with the Laplacian in
geodesic polar form for each factor.
"""

import math
import logging
from typing import NamedTuple, Tuple

import numpy as np

from config.settings import DEFAULT_TOLERANCES, SeriesConfig, ToleranceConfig
from core.errors import DomainError, PrecisionError, require_positive
from core.geometry import (
    Circle, Euclidean, ModelManifold, Product, Sphere2, manifold_factors, point_at_distance,
)

logger = logging.getLogger(__name__)

DEFAULT_SERIES = DEFAULT_TOLERANCES.series()

# Largest tolerated ratio between sum(|terms|) and |sum| in the Legendre series.
CANCELLATION_LIMIT = 1e5
CUT_LOCUS_MARGIN = 1e-3


class KernelEval(NamedTuple):
    """Heat kernel value with its x-derivatives at one (x, y, t)."""
    value: float
    grad_log_sq: float
    laplacian_ratio: float
    dt_log: float


class RadialTerms(NamedTuple):
    """h(d, t) and its derivatives in the radial variable and in time."""
    value: float
    d1: float
    d2: float
    dt: float


def _reduce_arc(L: float, d: float) -> float:
    d = abs(d) % L
    return min(d, L - d)


def circle_switch_time(L: float) -> float:
    """Time at which the circle kernel changes representation."""
    return L * L / (4.0 * math.pi)


def _circle_images(L: float, d: float, t: float, series: SeriesConfig) -> RadialTerms:
    norm = 1.0 / math.sqrt(4.0 * math.pi * t)

    def image(shift: float) -> Tuple[float, float, float]:
        g = norm * math.exp(-shift * shift / (4.0 * t))
        return g, -shift / (2.0 * t) * g, (shift * shift / (4.0 * t * t) - 1.0 / (2.0 * t)) * g

    value, d1, d2 = image(d)
    for k in range(1, series.n_max + 1):
        plus, minus = image(d + k * L), image(d - k * L)
        value += plus[0] + minus[0]
        d1 += plus[1] + minus[1]
        d2 += plus[2] + minus[2]
        if plus[0] + minus[0] <= series.tol_series * value and k * L > d + 2.0 * math.sqrt(t):
            break
    else:
        raise PrecisionError(f"Image sum did not converge within {series.n_max} terms")
    return RadialTerms(value, d1, d2, d2)


def _circle_spectral(L: float, d: float, t: float, series: SeriesConfig) -> RadialTerms:
    j = np.arange(1, series.n_max + 1, dtype=float)
    omega = 2.0 * math.pi * j / L
    decay = np.exp(-omega * omega * t)
    partial = (1.0 + 2.0 * np.cumsum(decay)) / L
    small = np.nonzero(2.0 * decay / L < series.tol_series * partial)[0]
    if small.size == 0:
        raise PrecisionError(f"Spectral sum did not converge within {series.n_max} terms")
    keep = small[0] + 1
    omega, decay = omega[:keep], decay[:keep]
    cos_term = np.cos(omega * d)
    value = (1.0 + 2.0 * float(np.sum(decay * cos_term))) / L
    d1 = -2.0 * float(np.sum(omega * decay * np.sin(omega * d))) / L
    d2 = -2.0 * float(np.sum(omega * omega * decay * cos_term)) / L
    return RadialTerms(value, d1, d2, d2)


def circle_kernel_images(L: float, d: float, t: float,
                         series: SeriesConfig = DEFAULT_SERIES) -> float:
    """Circle kernel as the sum of Gaussian images."""
    require_positive("t", t)
    return _circle_images(L, _reduce_arc(L, d), t, series).value


def circle_kernel_spectral(L: float, d: float, t: float,
                           series: SeriesConfig = DEFAULT_SERIES) -> float:
    """Circle kernel as the Fourier (eigenfunction) series."""
    require_positive("t", t)
    return _circle_spectral(L, _reduce_arc(L, d), t, series).value


def _circle_terms(L: float, d: float, t: float, series: SeriesConfig) -> RadialTerms:
    require_positive("t", t)
    d = _reduce_arc(L, d)
    if t < circle_switch_time(L):
        return _circle_images(L, d, t, series)
    return _circle_spectral(L, d, t, series)


def circle_kernel(L: float, d: float, t: float, series: SeriesConfig = DEFAULT_SERIES) -> float:
    """Heat kernel of the circle of circumference L at arc distance d."""
    return _circle_terms(L, d, t, series).value


class _LegendreSums(NamedTuple):
    value: float
    first: float   # F'(x)
    second: float  # F''(x)
    dt: float
    terms: int


def _sphere_sums(d: float, t: float, series: SeriesConfig, derivatives: bool) -> _LegendreSums:
    if not t > 0:
        raise DomainError(f"t must be positive, got {t}")
    if t < series.t_min * (1.0 - 1e-12):
        raise PrecisionError(
            f"Sphere kernel requested at t={t:g} below the Legendre-series floor "
            f"t_min={series.t_min:g}; the series converges too slowly there")
    x = math.cos(d)
    p_prev, p_cur = 1.0, x
    dp_prev, dp_cur = 0.0, 1.0
    ddp_prev, ddp_cur = 0.0, 0.0

    value = first = second = dt = magnitude = 0.0
    for l in range(series.n_max + 1):
        if l == 0:
            p, dp, ddp = 1.0, 0.0, 0.0
        elif l == 1:
            p, dp, ddp = p_cur, dp_cur, ddp_cur
        else:
            # Bonnet recursion and its derivatives
            p_next = ((2 * l - 1) * x * p_cur - (l - 1) * p_prev) / l
            dp_next = dp_prev + (2 * l - 1) * p_cur
            ddp_next = ddp_prev + (2 * l - 1) * dp_cur
            p_prev, p_cur = p_cur, p_next
            dp_prev, dp_cur = dp_cur, dp_next
            ddp_prev, ddp_cur = ddp_cur, ddp_next
            p, dp, ddp = p_cur, dp_cur, ddp_cur

        weight = (2 * l + 1) * math.exp(-l * (l + 1) * t)
        coefficient = weight / (4.0 * math.pi)
        value += coefficient * p
        magnitude += coefficient * abs(p)
        if derivatives:
            first += coefficient * dp
            second += coefficient * ddp
            dt -= l * (l + 1) * coefficient * p
        if l > 0 and weight < series.tol_series * abs(value) * 4.0 * math.pi:
            break
    else:
        raise PrecisionError(f"Legendre series did not converge within {series.n_max} terms")

    if value <= 0 or magnitude > CANCELLATION_LIMIT * abs(value):
        raise PrecisionError(
            f"Legendre series loses precision at d={d:g}, t={t:g} "
            f"(cancellation ratio {magnitude / max(abs(value), 1e-300):.3g})")
    return _LegendreSums(value, first, second, dt, l + 1)


def sphere2_kernel(d: float, t: float, series: SeriesConfig = DEFAULT_SERIES) -> float:
    """Heat kernel of the unit 2-sphere at angular distance d."""
    if not 0 <= d <= math.pi + 1e-12:
        raise DomainError(f"Sphere distance must lie in [0, pi], got {d}")
    return _sphere_sums(min(d, math.pi), t, series, derivatives=False).value


def euclidean_kernel(n: int, d: float, t: float) -> float:
    """Gauss-Weierstrass kernel (4 pi t)^(-n/2) exp(-d^2 / 4t)."""
    require_positive("t", t)
    return math.exp(log_euclidean_kernel(n, d, t))


def log_euclidean_kernel(n: int, d: float, t: float) -> float:
    return -0.5 * n * math.log(4.0 * math.pi * t) - d * d / (4.0 * t)


def _factor_value(m: ModelManifold, d: float, t: float, series: SeriesConfig) -> float:
    if isinstance(m, Euclidean):
        return euclidean_kernel(m.n, d, t)
    if isinstance(m, Circle):
        return circle_kernel(m.L, d, t, series)
    if isinstance(m, Sphere2):
        return sphere2_kernel(d, t, series)
    raise DomainError(f"Unsupported factor {m!r}")


def _factor_distances(m: ModelManifold, x, y) -> Tuple[float, ...]:
    x, y = m.validate_point(x), m.validate_point(y)
    if isinstance(m, Product):
        return m.factor_distances(x, y)
    return (m.distance(x, y),)


def heat_kernel(m: ModelManifold, x, y, t: float,
                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Heat kernel H(x, y, t) of a catalog manifold."""
    require_positive("t", t)
    series = tol.series()
    return math.prod(_factor_value(f, d, t, series)
                     for f, d in zip(manifold_factors(m), _factor_distances(m, x, y)))


def log_heat_kernel(m: ModelManifold, x, y, t: float,
                    tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Natural log of H(x, y, t); Euclidean factors never underflow."""
    require_positive("t", t)
    series = tol.series()
    total = 0.0
    for f, d in zip(manifold_factors(m), _factor_distances(m, x, y)):
        if isinstance(f, Euclidean):
            total += log_euclidean_kernel(f.n, d, t)
            continue
        value = _factor_value(f, d, t, series)
        if value <= 0:
            raise PrecisionError(f"Kernel underflow on {f.tag} at d={d:g}, t={t:g}")
        total += math.log(value)
    return total


def heat_kernel_at(m: ModelManifold, d: float, t: float,
                   tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Kernel between the base point and the point at distance d from it."""
    x = m.base_point()
    return heat_kernel(m, x, point_at_distance(m, x, d), t, tol)


def _factor_derivatives(m: ModelManifold, d: float, t: float, series: SeriesConfig) -> KernelEval:
    if isinstance(m, Euclidean):
        rho_t = d * d / (4.0 * t * t)
        laplacian = rho_t - m.n / (2.0 * t)
        return KernelEval(euclidean_kernel(m.n, d, t), rho_t, laplacian, laplacian)
    if isinstance(m, Circle):
        terms = _circle_terms(m.L, d, t, series)
        if terms.value <= 0:
            raise PrecisionError(f"Circle kernel underflow at d={d:g}, t={t:g}")
        ratio = terms.d2 / terms.value
        return KernelEval(terms.value, (terms.d1 / terms.value) ** 2, ratio, terms.dt / terms.value)
    if isinstance(m, Sphere2):
        if d > math.pi - CUT_LOCUS_MARGIN:
            raise PrecisionError(
                f"Derivatives at d={d:g} are within {CUT_LOCUS_MARGIN:g} of the cut locus")
        sums = _sphere_sums(d, t, series, derivatives=True)
        sin_sq = math.sin(d) ** 2
        x = math.cos(d)
        laplacian = sin_sq * sums.second - 2.0 * x * sums.first
        return KernelEval(
            sums.value,
            sin_sq * (sums.first / sums.value) ** 2,
            laplacian / sums.value,
            sums.dt / sums.value,
        )
    raise DomainError(f"Unsupported factor {m!r}")


def kernel_derivatives(m: ModelManifold, x, y, t: float,
                       tol: ToleranceConfig = DEFAULT_TOLERANCES) -> KernelEval:
    """Value, |grad_x ln H|^2, Delta_x H / H and d/dt ln H at (x, y, t)."""
    require_positive("t", t)
    series = tol.series()
    parts = [_factor_derivatives(f, d, t, series)
             for f, d in zip(manifold_factors(m), _factor_distances(m, x, y))]
    # Factor gradients are orthogonal, so the cross terms of the product rule vanish.
    return KernelEval(
        value=math.prod(p.value for p in parts),
        grad_log_sq=sum(p.grad_log_sq for p in parts),
        laplacian_ratio=sum(p.laplacian_ratio for p in parts),
        dt_log=sum(p.dt_log for p in parts),
    )


def kernel_derivatives_at(m: ModelManifold, d: float, t: float,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES) -> KernelEval:
    """kernel_derivatives between the base point and a point at distance d."""
    x = m.base_point()
    return kernel_derivatives(m, x, point_at_distance(m, x, d), t, tol)


def _radial_laplacian(m: ModelManifold, r: float, h1: float, h2: float) -> float:
    n = m.dimension
    if isinstance(m, Sphere2):
        return 2.0 * h2 if r == 0 else h2 + h1 / math.tan(r)
    if n == 1:
        return h2
    return n * h2 if r == 0 else h2 + (n - 1) * h1 / r


def kernel_derivatives_fd(m: ModelManifold, x, y, t: float,
                          tol: ToleranceConfig = DEFAULT_TOLERANCES) -> KernelEval:
    """Central finite-difference counterpart of kernel_derivatives."""
    require_positive("t", t)
    series = tol.series()
    distances = _factor_distances(m, x, y)
    parts = []
    for f, r in zip(manifold_factors(m), distances):
        h = tol.fd_step * max(1.0, r, math.sqrt(t))
        k = tol.fd_step * t
        value = _factor_value(f, r, t, series)
        # radial profiles are even, so r - h is reflected through the centre
        plus = _factor_value(f, r + h, t, series)
        minus = _factor_value(f, abs(r - h), t, series)
        h1 = (plus - minus) / (2.0 * h)
        h2 = (plus - 2.0 * value + minus) / (h * h)
        dt = (_factor_value(f, r, t + k, series) - _factor_value(f, r, t - k, series)) / (2.0 * k)
        parts.append(KernelEval(
            value, (h1 / value) ** 2, _radial_laplacian(f, r, h1, h2) / value, dt / value))
    return KernelEval(
        value=math.prod(p.value for p in parts),
        grad_log_sq=sum(p.grad_log_sq for p in parts),
        laplacian_ratio=sum(p.laplacian_ratio for p in parts),
        dt_log=sum(p.dt_log for p in parts),
    )
