"""Classical inequality checks, one module per inequality."""

from typing import Optional

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.check import BaseCheck, CheckParams
from core.errors import UsageError
from core.geometry import ModelManifold

from checks.li_yau_gradient import LiYauGradientCheck
from checks.harnack import HarnackCheck
from checks.mean_value import MeanValueCheck
from checks.cheeger_yau import CheegerYauCheck
from checks.davies_integral import DaviesIntegralCheck
from checks.hamilton import HamiltonGradientCheck, HamiltonLaplacianCheck

# Registry of available checks
CHECK_REGISTRY = {
    'li_yau_gradient': LiYauGradientCheck,
    'harnack': HarnackCheck,
    'mean_value': MeanValueCheck,
    'cheeger_yau': CheegerYauCheck,
    'davies_integral': DaviesIntegralCheck,
    'hamilton_gradient': HamiltonGradientCheck,
    'hamilton_laplacian': HamiltonLaplacianCheck,
}


def get_check(name: str, manifold: ModelManifold, params: Optional[CheckParams] = None,
              tol: ToleranceConfig = DEFAULT_TOLERANCES) -> BaseCheck:
    """
    Get the check registered under a given name.

    Raises:
        UsageError: If the name is unknown or the check does not apply to the manifold
    """
    if name not in CHECK_REGISTRY:
        raise UsageError(f"Unknown inequality '{name}'; choose from {', '.join(CHECK_REGISTRY)}")
    return CHECK_REGISTRY[name](manifold, params, tol)


def applicable_checks(manifold: ModelManifold, params: Optional[CheckParams] = None):
    """Names of the checks that can be evaluated on the manifold."""
    params = params or CheckParams()
    names = []
    for name, check_class in CHECK_REGISTRY.items():
        try:
            check_class(manifold, params)
        except UsageError:
            continue
        names.append(name)
    return names
