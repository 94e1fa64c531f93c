"""Verification suites, one module per suite."""

from typing import Any, Dict, List, Optional, Sequence

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.errors import UsageError
from core.geometry import ModelManifold
from core.suite import BaseSuite

from suites.sandwich import SandwichSuite
from suites.gradient import GradientSuite
from suites.classical import ClassicalSuite
from suites.asymptotics import AsymptoticsSuite
from suites.kernels import KernelsSuite

# Registry of available suites, in run order for 'all'
SUITE_REGISTRY = {
    'sandwich': SandwichSuite,
    'gradient': GradientSuite,
    'classical': ClassicalSuite,
    'asymptotics': AsymptoticsSuite,
    'kernels': KernelsSuite,
}


def resolve_suites(name: str) -> List[str]:
    """Expand 'all' (or a comma-separated list) into registered suite names."""
    names = list(SUITE_REGISTRY) if name == 'all' else [n.strip() for n in name.split(',') if n.strip()]
    unknown = [n for n in names if n not in SUITE_REGISTRY]
    if unknown or not names:
        raise UsageError(f"Unknown suite '{name}'; choose from all, {', '.join(SUITE_REGISTRY)}")
    return names


def get_suite(name: str, manifolds: Sequence[ModelManifold],
              tol: ToleranceConfig = DEFAULT_TOLERANCES, threads: int = 1,
              options: Optional[Dict[str, Any]] = None) -> BaseSuite:
    """
    Get the suite registered under a given name.

    Raises:
        UsageError: If the name is not registered
    """
    if name not in SUITE_REGISTRY:
        raise UsageError(f"Unknown suite '{name}'; choose from all, {', '.join(SUITE_REGISTRY)}")
    return SUITE_REGISTRY[name](manifolds, tol, threads, options)
