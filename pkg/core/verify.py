"""
Sweep harness: evaluates bounds and estimates against reference kernels on
(d, t) grids and aggregates the margins into reports.
"""

import math
import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.bounds import bounds_delta1, lower_bound, r_delta, upper_bound
from core.errors import PrecisionError, UsageError, require_nonnegative
from core.estimates import gradient_rhs, laplacian_rhs
from core.geometry import (
    ModelManifold, Sphere2, euclidean_ball_volume, log_ball_volume, log_euclidean_ball_volume,
    manifold_factors, mvg_theta, point_at_distance, volume_growth,
)
from core.kernels import CUT_LOCUS_MARGIN, kernel_derivatives, log_heat_kernel
from core.report import SweepRecord, SweepReport, verdict_passes
from core.utils import parallel_map, ratio_margin, signed_margin

logger = logging.getLogger(__name__)

DEFAULT_DELTAS = (0.1, 0.5, 1.0, 2.0, 10.0)
DEFAULT_ALPHAS = (0.1, 0.25, 0.5, 0.9)
TREND_THRESHOLD = 1e-3
MONOTONE_SLACK = 1e-10


class ChainResult(NamedTuple):
    """Worst step and worst bracketing margin of one delta = 1 chain at (d, t)."""
    d: float
    t: float
    chain: str
    step_margin: float
    bracket_margin: float


class PathSpec(NamedTuple):
    """Path d(t) = scale * t^beta."""
    beta: float
    scale: float = 1.0

    def distance(self, t: float) -> float:
        return self.scale * t ** self.beta


class AsymptoticRow(NamedTuple):
    t: float
    d: float
    scaled_kernel: float       # V_x(sqrt t) exp(d^2/4t) H(x, y(t), t)
    ratio: float               # scaled_kernel / limit value
    on_diagonal: float         # t^(n/2) H(p, p, t)
    on_diagonal_step: float    # relative increase over the previous row


class AsymptoticReport(NamedTuple):
    manifold: str
    path: PathSpec
    limit_value: float
    theta: Optional[float]
    rows: Tuple[AsymptoticRow, ...]
    skipped: int

    def _tail(self) -> Tuple[AsymptoticRow, ...]:
        return self.rows[-max(1, len(self.rows) // 4):] if self.rows else ()

    @property
    def last_quartile_deviation(self) -> float:
        return max((abs(r.ratio - 1.0) for r in self._tail()), default=math.nan)

    @property
    def liminf_ratio(self) -> float:
        return min((r.ratio for r in self._tail()), default=math.nan)

    @property
    def lower_limit_applies(self) -> bool:
        return self.theta is not None and self.path.beta < 1.0

    @property
    def limit_applies(self) -> bool:
        return self.theta is not None and self.path.beta < 0.5

    @property
    def limit_check(self) -> Optional[bool]:
        """Exact-limit verdict, or None when maximal volume growth fails."""
        if not self.limit_applies:
            return None
        return self.last_quartile_deviation <= TREND_THRESHOLD

    @property
    def monotone(self) -> bool:
        return all(r.on_diagonal_step >= -MONOTONE_SLACK for r in self.rows[1:])


class SlowGrowthRow(NamedTuple):
    t: float
    R: float
    kernel: float
    lower_prediction: float
    ratio: float               # kernel / lower_prediction
    scaled_upper: float        # R^tau exp(d^2/4t) H


class SlowGrowthReport(NamedTuple):
    manifold: str
    tau: int
    growth_constant: float
    d: float
    rows: Tuple[SlowGrowthRow, ...]

    @property
    def tail_ratio(self) -> float:
        tail = self.rows[-max(1, len(self.rows) // 4):]
        return min((r.ratio for r in tail), default=math.nan)

    @property
    def tail_spread(self) -> float:
        """Relative spread of the scaled upper quantity over the last quartile."""
        tail = [r.scaled_upper for r in self.rows[-max(1, len(self.rows) // 4):]]
        if not tail:
            return math.nan
        return (max(tail) - min(tail)) / max(tail)


def _usable_distances(m: ModelManifold, distances: Sequence[float], margin: float = 0.0) -> List[float]:
    limit = m.diameter - margin if math.isfinite(m.diameter) else math.inf
    kept = [d for d in distances if d <= limit]
    for d in distances:
        require_nonnegative("d", d)
    if len(kept) < len(distances):
        logger.warning(f"Dropped {len(distances) - len(kept)} distances beyond {limit:g} on {m.tag}")
    return kept


def _grid(d_grid: Sequence[float], t_grid: Sequence[float]) -> List[Tuple[float, float]]:
    if not d_grid or not t_grid:
        raise UsageError("Sweep grids must be nonempty")
    return [(float(d), float(t)) for d in d_grid for t in t_grid]


def _skipped_note(skipped: int, total: int) -> str:
    return (f"{skipped} of {total} grid points skipped ({skipped / total:.0%}) "
            f"at the series precision limits")


def _sandwich_point(m: ModelManifold, d: float, t: float, deltas: Sequence[float],
                    tol: ToleranceConfig, chains: bool, symmetric: bool = False):
    x = m.base_point()
    y = point_at_distance(m, x, d)
    log_h = log_heat_kernel(m, x, y, t, tol)
    h = math.exp(log_h)
    records = []
    for delta in deltas:
        lower = lower_bound(m, x, y, t, delta, symmetric, tol)
        upper = upper_bound(m, x, y, t, delta, symmetric, tol)
        margin_lower = ratio_margin(lower.log_value, log_h)
        margin_upper = ratio_margin(log_h, upper.log_value)
        records.append(SweepRecord(
            m.tag, m.dimension, d, t, delta, lower.value, h, upper.value,
            margin_lower, margin_upper, verdict_passes(margin_lower, margin_upper, tol.rel_tol),
        ))
    results = []
    if chains:
        for chain in bounds_delta1(m, x, y, t, tol).all():
            step = min(chain.link_margins(), default=math.inf)
            if chain.side == 'lower':
                bracket = min(ratio_margin(link.log_value, log_h) for link in chain.links)
            else:
                bracket = min(ratio_margin(log_h, link.log_value) for link in chain.links)
            results.append(ChainResult(d, t, chain.name, step, bracket))
    return records, results


def sandwich_sweep(m: ModelManifold, d_grid: Sequence[float], t_grid: Sequence[float],
                   deltas: Sequence[float] = DEFAULT_DELTAS,
                   tol: ToleranceConfig = DEFAULT_TOLERANCES, threads: int = 1,
                   chains: bool = True,
                   symmetric: bool = False) -> Tuple[SweepReport, Tuple[ChainResult, ...]]:
    """
    Check lower_bound <= H <= upper_bound at every grid point and delta.

    With symmetric set, both bounds use the symmetrized volume factors and
    the report is tagged sandwich:symmetric.

    Returns:
        The sweep report and the delta = 1 chain results at every evaluated point
    """
    if not deltas:
        raise UsageError("The delta set must be nonempty")
    points = _grid(_usable_distances(m, d_grid), t_grid)

    def evaluate(point):
        try:
            return _sandwich_point(m, point[0], point[1], deltas, tol, chains, symmetric)
        except PrecisionError as e:
            logger.warning(f"Skipped d={point[0]:g}, t={point[1]:g} on {m.tag}: {e}")
            return None

    grid = {'d': list(d_grid), 't': list(t_grid), 'delta': list(deltas)}
    if symmetric:
        grid['symmetric'] = True
    outcomes = parallel_map(evaluate, points, threads)
    records = [r for o in outcomes if o is not None for r in o[0]]
    chain_results = tuple(c for o in outcomes if o is not None for c in o[1])
    skipped = sum(1 for o in outcomes if o is None)
    notes = [_skipped_note(skipped, len(points))] if skipped else []
    broken = [c for c in chain_results if min(c.step_margin, c.bracket_margin) < -tol.rel_tol]
    if broken:
        notes.append(f"{len(broken)} delta=1 chain evaluations violated a stated step")
    report = SweepReport(
        suite='sandwich:symmetric' if symmetric else 'sandwich', manifold=m.tag, grid=grid,
        records=tuple(records), skipped=skipped, rel_tol=tol.rel_tol, notes=tuple(notes),
        extra_failures=len(broken),
    )
    return report, chain_results


def _derivative_point(m: ModelManifold, d: float, t: float, alphas: Sequence[Optional[float]],
                      tol: ToleranceConfig) -> List[SweepRecord]:
    x = m.base_point()
    ev = kernel_derivatives(m, x, point_at_distance(m, x, d), t, tol)
    records = []
    for alpha in alphas:
        grad = gradient_rhs(d, t, m.dimension, alpha)
        lap = laplacian_rhs(d, t, m.dimension, alpha)
        grad_lhs = grad.lhs_coefficient * t * ev.grad_log_sq
        lap_lhs = lap.lhs_coefficient * t * ev.laplacian_ratio
        margin_grad = signed_margin(grad.rhs, grad_lhs)
        margin_lap = signed_margin(lap.rhs, lap_lhs)
        records.append(SweepRecord(
            m.tag, m.dimension, d, t, alpha, grad_lhs, ev.value, grad.rhs,
            margin_grad, margin_lap, verdict_passes(margin_grad, margin_lap, tol.rel_tol),
        ))
    return records


def derivative_sweep(m: ModelManifold, d_grid: Sequence[float], t_grid: Sequence[float],
                     alphas: Sequence[float] = DEFAULT_ALPHAS,
                     tol: ToleranceConfig = DEFAULT_TOLERANCES, threads: int = 1) -> SweepReport:
    """
    Gradient and Laplacian estimates, sharp and alpha forms, at every grid point.

    Record columns: delta is alpha (blank for the sharp form), lower the
    gradient left side, reference H, upper the gradient right side,
    margin_lower the gradient margin and margin_upper the Laplacian margin.
    Compact manifolds are reported in informative mode.
    """
    margin = CUT_LOCUS_MARGIN if _has_sphere(m) else 0.0
    points = _grid(_usable_distances(m, d_grid, margin), t_grid)
    modes = (None,) + tuple(alphas)

    def evaluate(point):
        try:
            return _derivative_point(m, point[0], point[1], modes, tol)
        except PrecisionError as e:
            logger.warning(f"Skipped d={point[0]:g}, t={point[1]:g} on {m.tag}: {e}")
            return None

    outcomes = parallel_map(evaluate, points, threads)
    records = tuple(r for o in outcomes if o is not None for r in o)
    skipped = sum(1 for o in outcomes if o is None)
    notes = []
    if m.is_compact:
        notes.append('compact manifold: the estimates are stated for non-compact manifolds')
    if skipped:
        notes.append(_skipped_note(skipped, len(points)))
    return SweepReport(
        suite='gradient', manifold=m.tag,
        grid={'d': list(d_grid), 't': list(t_grid), 'alpha': list(alphas)},
        records=records, skipped=skipped,
        informative=m.is_compact, rel_tol=tol.rel_tol, notes=tuple(notes),
    )


def _has_sphere(m: ModelManifold) -> bool:
    return any(isinstance(f, Sphere2) for f in manifold_factors(m))


class SharpnessRatios(NamedTuple):
    rho: float
    gradient_lhs_over_rhs: float
    laplacian_rhs_over_lhs: float


def sharpness_ratios(m: ModelManifold, d: float, t: float,
                     tol: ToleranceConfig = DEFAULT_TOLERANCES) -> SharpnessRatios:
    """How close the sharp estimates come to the reference kernel at (d, t)."""
    x = m.base_point()
    ev = kernel_derivatives(m, x, point_at_distance(m, x, d), t, tol)
    grad = gradient_rhs(d, t, m.dimension)
    lap = laplacian_rhs(d, t, m.dimension)
    return SharpnessRatios(
        rho=d * d / (4.0 * t),
        gradient_lhs_over_rhs=grad.lhs_coefficient * t * ev.grad_log_sq / grad.rhs,
        laplacian_rhs_over_lhs=lap.rhs / (lap.lhs_coefficient * t * ev.laplacian_ratio),
    )


def asymptotic_diagnostics(m: ModelManifold, path: PathSpec, t_grid: Sequence[float],
                           tol: ToleranceConfig = DEFAULT_TOLERANCES) -> AsymptoticReport:
    """
    Tabulate V_x(sqrt t) exp(d^2/4t) H(x, y(t), t) along a path against its
    maximal-volume-growth limit, together with t^(n/2) H(p, p, t).
    """
    require_nonnegative("beta", path.beta)
    if not t_grid:
        raise UsageError("The time grid must be nonempty")
    n = m.dimension
    limit_value = euclidean_ball_volume(n, 1.0) / (4.0 * math.pi) ** (0.5 * n)
    x = m.base_point()
    rows, skipped, previous = [], 0, None
    for t in sorted(t_grid):
        d = path.distance(t)
        if d > m.diameter:
            raise UsageError(f"Path distance {d:g} at t={t:g} exceeds the diameter of {m.tag}")
        try:
            log_q = (log_ball_volume(m, math.sqrt(t), tol) + d * d / (4.0 * t)
                     + log_heat_kernel(m, x, point_at_distance(m, x, d), t, tol))
            log_diag = 0.5 * n * math.log(t) + log_heat_kernel(m, x, x, t, tol)
        except PrecisionError as e:
            skipped += 1
            logger.warning(f"Skipped t={t:g} on {m.tag}: {e}")
            continue
        step = 0.0 if previous is None else math.expm1(log_diag - previous)
        previous = log_diag
        rows.append(AsymptoticRow(t, d, math.exp(log_q), math.exp(log_q) / limit_value,
                                  math.exp(log_diag), step))
    return AsymptoticReport(m.tag, path, limit_value, mvg_theta(m), tuple(rows), skipped)


def slow_growth_diagnostics(m: ModelManifold, t_grid: Sequence[float], d: float = 0.0,
                            tol: ToleranceConfig = DEFAULT_TOLERANCES) -> SlowGrowthReport:
    """
    Compare H with the slower-volume-growth predictions when V(R) ~ C_M R^tau:
    the lower prediction omega_n / (e C_M) R^(n - tau) (4 pi t)^(-n/2) e^(-d^2/4t)
    and the upper quantity R^tau e^(d^2/4t) H, with R = R_1(t).
    """
    tau, growth = volume_growth(m)
    n = m.dimension
    x = m.base_point()
    y = point_at_distance(m, x, d)
    rows = []
    for t in sorted(t_grid):
        R = r_delta(d, t, 1.0)
        rho = d * d / (4.0 * t)
        log_h = log_heat_kernel(m, x, y, t, tol)
        log_prediction = (log_euclidean_ball_volume(n, 1.0) - 1.0 - math.log(growth)
                          + (n - tau) * math.log(R) - 0.5 * n * math.log(4.0 * math.pi * t) - rho)
        rows.append(SlowGrowthRow(
            t, R, math.exp(log_h), math.exp(log_prediction), math.exp(log_h - log_prediction),
            math.exp(tau * math.log(R) + rho + log_h),
        ))
    return SlowGrowthReport(m.tag, tau, growth, d, tuple(rows))
