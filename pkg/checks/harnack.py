"""Check for the parabolic Harnack inequality."""

import math
from typing import Any, Dict

from core.check import BaseCheck, CheckPoint
from core.estimates import harnack_log_factor
from core.geometry import distance
from core.kernels import log_heat_kernel
from core.utils import ratio_margin


class HarnackCheck(BaseCheck):
    """
    u(x, t1) <= u(y, t2) (t2/t1)^(n/2) exp(d^2 / 4(t2 - t1)) for u = H(p, ., t).

    Both orderings of the pole and the point at distance d along the ray are
    tested and the worse one is reported.
    """

    @property
    def name(self) -> str:
        return "harnack"

    @property
    def description(self) -> str:
        return "Li-Yau parabolic Harnack inequality"

    def get_additional_info(self) -> Dict[str, Any]:
        return {'t2 / t1': self.params.time_ratio}

    def evaluate(self, d: float, t: float) -> CheckPoint:
        m = self.manifold
        p, q = self.pole(), self.point(d)
        t2 = self.params.time_ratio * t
        factor = harnack_log_factor(m.dimension, t, t2, distance(m, p, q))
        worst = None
        for x, y in ((q, p), (p, q)):
            log_lhs = log_heat_kernel(m, p, x, t, self.tol)
            log_rhs = log_heat_kernel(m, p, y, t2, self.tol) + factor
            candidate = (log_lhs, log_rhs, ratio_margin(log_lhs, log_rhs))
            if worst is None or candidate[2] < worst[2]:
                worst = candidate
        log_lhs, log_rhs, margin = worst
        return CheckPoint(d, t, math.exp(log_lhs), math.exp(log_rhs), margin)
