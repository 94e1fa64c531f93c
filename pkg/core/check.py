"""Base class for the classical inequality checks."""

import math
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, NamedTuple, Optional, Tuple

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.errors import PrecisionError, UsageError
from core.geometry import ModelManifold, point_at_distance
from core.kernels import CUT_LOCUS_MARGIN

logger = logging.getLogger(__name__)


class CheckParams(NamedTuple):
    """Grid and auxiliary parameters shared by the classical checks."""
    distances: Tuple[float, ...] = (0.0, 0.25, 0.5, 1.0, 2.0)
    times: Tuple[float, ...] = (0.05, 0.2, 0.5, 1.0, 3.0)
    time_ratio: float = 2.0          # t2 / t1 for Harnack and mean value
    radius: float = 0.3              # mean-value ball radius
    shift: float = 0.05              # initial time of the Hamilton solutions
    curvature: float = 0.0           # K in Ric >= -K
    arcs: Tuple[Tuple[Tuple[float, float], Tuple[float, float]], ...] = (
        ((0.0, 0.5), (math.pi, math.pi + 0.5)),
        ((0.0, 0.5), (1.0, 1.5)),
        ((0.0, 1.0), (0.5, 1.5)),
    )


class CheckPoint(NamedTuple):
    d: float
    t: float
    lhs: float
    rhs: float
    margin: float


class CheckReport(NamedTuple):
    name: str
    manifold: str
    points: Tuple[CheckPoint, ...]
    skipped: int
    rel_tol: float

    @property
    def worst(self) -> Optional[CheckPoint]:
        if not self.points:
            return None
        return min(self.points, key=lambda p: p.margin)

    @property
    def worst_margin(self) -> float:
        worst = self.worst
        return worst.margin if worst is not None else math.inf

    @property
    def passed(self) -> bool:
        return self.worst_margin >= -self.rel_tol


class BaseCheck(ABC):
    """One classical inequality evaluated on reference heat kernels."""

    needs_derivatives = False

    def __init__(self, manifold: ModelManifold, params: Optional[CheckParams] = None,
                 tol: ToleranceConfig = DEFAULT_TOLERANCES):
        """
        Initialize the check.

        Args:
            manifold: Catalog manifold the kernels live on
            params: Grid and auxiliary parameters (defaults if omitted)
            tol: Tolerances for kernels, quadrature and the pass verdict

        Raises:
            UsageError: If the inequality does not apply to this manifold
        """
        self.manifold = manifold
        self.params = params or CheckParams()
        self.tol = tol
        if not self.applies_to(manifold):
            raise UsageError(f"Check '{self.name}' does not apply to {manifold.tag}")

    @property
    @abstractmethod
    def name(self) -> str:
        """Registry key of the check."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    def applies_to(self, manifold: ModelManifold) -> bool:
        """Whether the inequality can be evaluated on this manifold."""
        return True

    @abstractmethod
    def evaluate(self, d: float, t: float) -> CheckPoint:
        """Evaluate the inequality at one grid point."""
        pass

    def get_additional_info(self) -> Dict[str, Any]:
        """Extra configuration shown by suites; overridden where useful."""
        return {}

    def distances(self) -> List[float]:
        limit = self.manifold.diameter
        if self.needs_derivatives and math.isfinite(limit):
            limit -= CUT_LOCUS_MARGIN
        return [d for d in self.params.distances if d <= limit]

    def grid(self) -> List[Tuple[float, float]]:
        return [(d, t) for d in self.distances() for t in self.params.times]

    def pole(self):
        return self.manifold.base_point()

    def point(self, d: float):
        return point_at_distance(self.manifold, self.pole(), d)

    def run(self) -> CheckReport:
        """Evaluate every grid point; precision failures are counted as skipped."""
        points, skipped = [], 0
        for d, t in self.grid():
            try:
                points.append(self.evaluate(d, t))
            except PrecisionError as e:
                skipped += 1
                logger.warning(f"{self.name} on {self.manifold.tag}: skipped d={d:g}, t={t:g}: {e}")
        report = CheckReport(self.name, self.manifold.tag, tuple(points), skipped, self.tol.rel_tol)
        logger.info(f"{self.name} on {self.manifold.tag}: {len(points)} points, "
                    f"worst margin {report.worst_margin:.3e}, skipped {skipped}")
        return report
