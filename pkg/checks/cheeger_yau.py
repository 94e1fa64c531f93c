"""Check for the Cheeger-Yau comparison with the Euclidean kernel."""

import math

from core.check import BaseCheck, CheckPoint
from core.kernels import log_euclidean_kernel, log_heat_kernel
from core.utils import ratio_margin


class CheegerYauCheck(BaseCheck):
    """H(x, y, t) >= (4 pi t)^(-n/2) exp(-d^2/4t) when Ric >= 0."""

    @property
    def name(self) -> str:
        return "cheeger_yau"

    @property
    def description(self) -> str:
        return "Cheeger-Yau lower comparison"

    def evaluate(self, d: float, t: float) -> CheckPoint:
        log_gauss = log_euclidean_kernel(self.manifold.dimension, d, t)
        log_h = log_heat_kernel(self.manifold, self.pole(), self.point(d), t, self.tol)
        return CheckPoint(d, t, math.exp(log_gauss), math.exp(log_h), ratio_margin(log_gauss, log_h))
