"""Check for the mean value inequality with p = 1."""

import math
from typing import Any, Dict

from core.check import BaseCheck, CheckPoint
from core.estimates import harnack_log_factor
from core.geometry import ModelManifold, ball_integral, ball_volume
from core.kernels import heat_kernel
from core.utils import ratio_margin


class MeanValueCheck(BaseCheck):
    """
    u(x, t1) <= avg_{B_x(R)} u(., t2) (t2/t1)^(n/2) exp(R^2 / 4(t2 - t1)).

    The ball average is computed by polar quadrature, so only manifolds of
    dimension one or two whose injectivity radius exceeds R qualify.
    """

    @property
    def name(self) -> str:
        return "mean_value"

    @property
    def description(self) -> str:
        return "Mean value inequality (p = 1)"

    def applies_to(self, manifold: ModelManifold) -> bool:
        return manifold.dimension <= 2 and self.params.radius <= manifold.injectivity_radius

    def get_additional_info(self) -> Dict[str, Any]:
        return {'ball radius': self.params.radius, 't2 / t1': self.params.time_ratio}

    def evaluate(self, d: float, t: float) -> CheckPoint:
        m, R = self.manifold, self.params.radius
        p, x = self.pole(), self.point(d)
        t2 = self.params.time_ratio * t
        lhs = heat_kernel(m, p, x, t, self.tol)
        total = ball_integral(m, x, R, lambda q: heat_kernel(m, p, q, t2, self.tol), self.tol)
        average = total / ball_volume(m, x, R, self.tol)
        log_rhs = math.log(average) + harnack_log_factor(m.dimension, t, t2, R)
        return CheckPoint(d, t, lhs, math.exp(log_rhs), ratio_margin(math.log(lhs), log_rhs))
