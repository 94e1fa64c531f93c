"""Sharp gradient and Laplacian estimates, with far-field sharpness diagnostics."""

import logging
from typing import Any, Dict, List

from config.catalog import default_grid
from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.errors import PrecisionError
from core.geometry import Euclidean, ModelManifold
from core.report import SweepRecord, SweepReport
from core.suite import BaseSuite
from core.verify import DEFAULT_ALPHAS, derivative_sweep, sharpness_ratios

logger = logging.getLogger(__name__)

SHARPNESS_RHO = 1e6
SHARPNESS_T = 1.0
GRADIENT_RATIO_FLOOR = 0.99
LAPLACIAN_RATIO_TARGET = 4.0
LAPLACIAN_RATIO_WIDTH = 0.1


def sharpness_report(manifold: Euclidean, rho: float = SHARPNESS_RHO,
                     t: float = SHARPNESS_T,
                     tol: ToleranceConfig = DEFAULT_TOLERANCES) -> SweepReport:
    """
    Check that the sharp estimates are attained in the far field on R^n.

    The gradient ratio lhs/rhs must reach GRADIENT_RATIO_FLOOR and the
    Laplacian ratio rhs/lhs must lie within LAPLACIAN_RATIO_WIDTH of
    LAPLACIAN_RATIO_TARGET.
    """
    d = (4.0 * rho * t) ** 0.5
    ratios = sharpness_ratios(manifold, d, t, tol)
    margin_gradient = ratios.gradient_lhs_over_rhs - GRADIENT_RATIO_FLOOR
    margin_laplacian = 1.0 - abs(ratios.laplacian_rhs_over_lhs - LAPLACIAN_RATIO_TARGET) \
        / LAPLACIAN_RATIO_WIDTH
    record = SweepRecord(
        manifold.tag, manifold.dimension, d, t, None,
        ratios.gradient_lhs_over_rhs, ratios.rho, ratios.laplacian_rhs_over_lhs,
        margin_gradient, margin_laplacian, margin_gradient >= 0 and margin_laplacian >= 0,
    )
    return SweepReport(
        suite='gradient:sharpness', manifold=manifold.tag,
        grid={'d': [d], 't': [t], 'rho': rho}, records=(record,),
        notes=('lower = gradient lhs/rhs, reference = rho, upper = Laplacian rhs/lhs',),
    )


class GradientSuite(BaseSuite):
    """Suite for the sharp and alpha-family derivative estimates."""

    @property
    def name(self) -> str:
        return 'gradient'

    @property
    def description(self) -> str:
        return "Gradient: sharp gradient and Laplacian estimates of the heat kernel"

    def get_additional_info(self) -> Dict[str, Any]:
        return {'Alphas': ', '.join(f"{a:g}" for a in self.options.get('alpha', DEFAULT_ALPHAS))}

    def run_manifold(self, manifold: ModelManifold) -> List[SweepReport]:
        d_grid, t_grid = default_grid(manifold)
        reports = [derivative_sweep(
            manifold,
            self.options.get('d', d_grid),
            self.options.get('t', t_grid),
            self.options.get('alpha', DEFAULT_ALPHAS),
            tol=self.tol, threads=self.threads,
        )]
        if isinstance(manifold, Euclidean):
            try:
                reports.append(sharpness_report(manifold, tol=self.tol))
            except PrecisionError as e:
                logger.warning(f"Sharpness diagnostics skipped on {manifold.tag}: {e}")
        return reports
