"""Two-sided heat kernel bounds on the default grids."""

import logging
from typing import Any, Dict, List

from config.catalog import default_grid
from core.geometry import ModelManifold
from core.report import SweepReport
from core.suite import BaseSuite
from core.verify import DEFAULT_DELTAS, sandwich_sweep

logger = logging.getLogger(__name__)


class SandwichSuite(BaseSuite):
    """Suite for lower_bound <= H <= upper_bound plus the delta = 1 chains."""

    @property
    def name(self) -> str:
        return 'sandwich'

    @property
    def description(self) -> str:
        return "Sandwich: volume-ratio lower bound and radius-volume upper bound"

    def get_additional_info(self) -> Dict[str, Any]:
        return {'Deltas': ', '.join(f"{d:g}" for d in self.options.get('delta', DEFAULT_DELTAS))}

    def run_manifold(self, manifold: ModelManifold) -> List[SweepReport]:
        d_grid, t_grid = default_grid(manifold)
        grids = (
            self.options.get('d', d_grid),
            self.options.get('t', t_grid),
            self.options.get('delta', DEFAULT_DELTAS),
        )
        report, chains = sandwich_sweep(manifold, *grids, tol=self.tol, threads=self.threads)
        logger.debug(f"Evaluated {len(chains)} delta=1 chains on {manifold.tag}")
        symmetric, _ = sandwich_sweep(manifold, *grids, tol=self.tol, threads=self.threads,
                                      chains=False, symmetric=True)
        return [report, symmetric]
