"""Base verification suite with common functionality."""

import time
import logging
from abc import ABC, abstractmethod
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.geometry import ModelManifold
from core.report import SweepReport, VERDICT_FAIL

logger = logging.getLogger(__name__)


class SuiteResult(NamedTuple):
    suite: str
    reports: Tuple[SweepReport, ...]
    elapsed: float

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.reports if not r.informative)

    @property
    def skipped(self) -> int:
        return sum(r.skipped for r in self.reports)

    @property
    def passed(self) -> bool:
        return not any(r.verdict == VERDICT_FAIL for r in self.reports)


class BaseSuite(ABC):
    """Base class for all verification suites."""

    def __init__(self, manifolds: Sequence[ModelManifold],
                 tol: ToleranceConfig = DEFAULT_TOLERANCES, threads: int = 1,
                 options: Optional[Dict[str, Any]] = None):
        """
        Initialize the suite.

        Args:
            manifolds: Catalog manifolds to verify on
            tol: Tolerances used by every evaluation
            threads: Worker threads for grid evaluation
            options: Suite-specific overrides (grids, delta sets, alpha sets)
        """
        self.manifolds = list(manifolds)
        self.tol = tol
        self.threads = threads
        self.options = options or {}

    @property
    @abstractmethod
    def name(self) -> str:
        """Registry key of the suite."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @abstractmethod
    def run_manifold(self, manifold: ModelManifold) -> List[SweepReport]:
        """
        Run the suite on a single manifold.

        Returns:
            One report per sub-check
        """
        pass

    def applies_to(self, manifold: ModelManifold) -> bool:
        return True

    def get_additional_info(self) -> Dict[str, Any]:
        """
        Return any additional configuration info for display.
        Can be overridden by subclasses.
        """
        return {}

    def execute(self) -> SuiteResult:
        """Run the suite on every applicable manifold, logging progress."""
        logger.info("=" * 80)
        logger.info(self.description)
        logger.info("=" * 80)
        logger.info("Configuration:")
        logger.info(f"  Manifolds: {', '.join(m.tag for m in self.manifolds)}")
        logger.info(f"  Relative slack: {self.tol.rel_tol:g}")
        logger.info(f"  Threads: {self.threads}")
        for key, value in self.get_additional_info().items():
            logger.info(f"  {key}: {value}")

        targets = [m for m in self.manifolds if self.applies_to(m)]
        for m in self.manifolds:
            if m not in targets:
                logger.info(f"Skipping {m.tag}: {self.name} does not apply")

        suite_start = time.time()
        reports: List[SweepReport] = []
        for index, m in enumerate(targets, start=1):
            start = time.time()
            produced = self.run_manifold(m)
            reports.extend(produced)
            progress = index / len(targets) * 100
            verdicts = ', '.join(f"{r.suite}={r.verdict}" for r in produced)
            logger.info(f"{m.tag:<40} | Progress: {progress:>6.2f}% | "
                        f"Time: {time.time() - start:>6.2f}s | {verdicts}")

        result = SuiteResult(self.name, tuple(reports), time.time() - suite_start)
        logger.info("=" * 80)
        logger.info(f"Suite {self.name} completed in {result.elapsed:.2f}s: "
                    f"{len(reports)} reports, {result.violations} violations, "
                    f"{result.skipped} skipped points")
        return result
