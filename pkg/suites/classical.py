"""Classical inequalities (Li-Yau, Harnack, Cheeger-Yau, ...) on reference kernels."""

from typing import Any, Dict, List

from checks import applicable_checks, get_check
from core.check import CheckParams, CheckReport
from core.geometry import ModelManifold
from core.report import SweepRecord, SweepReport
from core.suite import BaseSuite


def check_to_sweep(report: CheckReport, manifold: ModelManifold) -> SweepReport:
    """Express a check report in the common sweep-report shape."""
    records = tuple(
        SweepRecord(manifold.tag, manifold.dimension, p.d, p.t, None, p.lhs, p.lhs, p.rhs,
                    p.margin, p.margin, p.margin >= -report.rel_tol)
        for p in report.points
    )
    return SweepReport(
        suite=f"classical:{report.name}", manifold=manifold.tag,
        grid={'points': len(report.points)}, records=records,
        skipped=report.skipped, rel_tol=report.rel_tol,
    )


class ClassicalSuite(BaseSuite):
    """Suite running every classical check that applies to a manifold."""

    @property
    def name(self) -> str:
        return 'classical'

    @property
    def description(self) -> str:
        return "Classical: Li-Yau, Harnack, mean value, Cheeger-Yau, Davies, Hamilton"

    @property
    def params(self) -> CheckParams:
        return self.options.get('check_params') or CheckParams()

    def get_additional_info(self) -> Dict[str, Any]:
        return {'Check grid': f"{len(self.params.distances)} x {len(self.params.times)}"}

    def run_manifold(self, manifold: ModelManifold) -> List[SweepReport]:
        reports = []
        for name in applicable_checks(manifold, self.params):
            check = get_check(name, manifold, self.params, self.tol)
            reports.append(check_to_sweep(check.run(), manifold))
        return reports
