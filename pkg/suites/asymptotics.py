"""Large-time behaviour along paths d(t) = t^beta and slower volume growth."""

from typing import Any, Dict, List

from config.catalog import default_grid
from core.geometry import ModelManifold, volume_growth
from core.report import SweepRecord, SweepReport, verdict_passes
from core.suite import BaseSuite
from core.utils import parse_grid
from core.verify import (
    MONOTONE_SLACK, TREND_THRESHOLD, AsymptoticReport, PathSpec, SlowGrowthReport,
    asymptotic_diagnostics, slow_growth_diagnostics,
)

DEFAULT_BETA = 0.4
LARGE_TIMES = 'log:1:1000000:13'


def asymptotic_to_sweep(report: AsymptoticReport, manifold: ModelManifold,
                        t_grid) -> SweepReport:
    """
    Records: delta = beta, lower = the limit value (blank without maximal
    volume growth), reference = the scaled kernel, upper = t^(n/2) H(p, p, t).
    The lower margin judges the limit over the last quartile only; the upper
    margin is the on-diagonal increase.
    """
    tail_start = len(report.rows) - max(1, len(report.rows) // 4)
    records = []
    for index, row in enumerate(report.rows):
        margin_limit = None
        if report.limit_applies and index >= tail_start:
            margin_limit = TREND_THRESHOLD - abs(row.ratio - 1.0)
        margin_step = row.on_diagonal_step if index > 0 else None
        records.append(SweepRecord(
            manifold.tag, manifold.dimension, row.d, row.t, report.path.beta,
            report.limit_value if report.theta is not None else None,
            row.scaled_kernel, row.on_diagonal, margin_limit, margin_step,
            verdict_passes(margin_limit, margin_step, MONOTONE_SLACK),
        ))
    notes = []
    if report.theta is None:
        notes.append('maximal volume growth fails: limit check absent')
    else:
        notes.append(f"last-quartile deviation {report.last_quartile_deviation:.3g}")
    return SweepReport(
        suite='asymptotics', manifold=manifold.tag,
        grid={'t': list(t_grid), 'beta': report.path.beta, 'scale': report.path.scale},
        records=tuple(records), skipped=report.skipped, rel_tol=MONOTONE_SLACK,
        notes=tuple(notes),
    )


def slow_growth_to_sweep(report: SlowGrowthReport, manifold: ModelManifold,
                         t_grid) -> SweepReport:
    """Informative records: lower = prediction, reference = H, upper = R^tau e^(d^2/4t) H."""
    records = tuple(
        SweepRecord(manifold.tag, manifold.dimension, report.d, row.t, None,
                    row.lower_prediction, row.kernel, row.scaled_upper, None, None, True)
        for row in report.rows
    )
    return SweepReport(
        suite='asymptotics:slow_growth', manifold=manifold.tag,
        grid={'t': list(t_grid), 'd': report.d, 'tau': report.tau}, records=records,
        informative=True,
        notes=(f"tau={report.tau}, C_M={report.growth_constant:.6g}, "
               f"tail kernel/prediction={report.tail_ratio:.4g}, "
               f"tail spread={report.tail_spread:.3g}",),
    )


class AsymptoticsSuite(BaseSuite):
    """Suite tabulating the large-time limits and on-diagonal monotonicity."""

    @property
    def name(self) -> str:
        return 'asymptotics'

    @property
    def description(self) -> str:
        return "Asymptotics: large-time limits along t^beta paths"

    def get_additional_info(self) -> Dict[str, Any]:
        return {'Beta (non-compact)': self.options.get('beta', DEFAULT_BETA)}

    def path_for(self, manifold: ModelManifold) -> PathSpec:
        if manifold.is_compact:
            return PathSpec(0.0, 0.0)
        return PathSpec(self.options.get('beta', DEFAULT_BETA))

    def times_for(self, manifold: ModelManifold):
        if 't' in self.options:
            return self.options['t']
        if manifold.is_compact:
            return default_grid(manifold)[1]
        return parse_grid(LARGE_TIMES)

    def run_manifold(self, manifold: ModelManifold) -> List[SweepReport]:
        t_grid = self.times_for(manifold)
        report = asymptotic_diagnostics(manifold, self.path_for(manifold), t_grid, self.tol)
        reports = [asymptotic_to_sweep(report, manifold, t_grid)]
        tau, _ = volume_growth(manifold)
        if 0 < tau < manifold.dimension:
            growth = slow_growth_diagnostics(manifold, t_grid, 0.0, self.tol)
            reports.append(slow_growth_to_sweep(growth, manifold, t_grid))
        return reports
