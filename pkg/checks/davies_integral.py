"""Check for Davies' integrated Gaussian bound on one-dimensional manifolds."""

import math
from typing import Any, Dict, List, Tuple

from scipy import integrate

from core.check import BaseCheck, CheckPoint
from core.errors import PrecisionError
from core.geometry import Circle, Euclidean, ModelManifold
from core.kernels import heat_kernel
from core.utils import ratio_margin

Interval = Tuple[float, float]


def _on_arc(m: ModelManifold, u: float, arc: Interval) -> bool:
    if isinstance(m, Circle):
        return (u - arc[0]) % m.L <= arc[1] - arc[0]
    return arc[0] <= u <= arc[1]


def set_distance(m: ModelManifold, first: Interval, second: Interval) -> float:
    """Distance between two intervals (or arcs of a circle)."""
    if _on_arc(m, second[0], first) or _on_arc(m, first[0], second):
        return 0.0
    return min(m.distance(m.validate_point(a), m.validate_point(b))
               for a in first for b in second)


class DaviesIntegralCheck(BaseCheck):
    """int_B1 int_B2 H(x, y, t) dy dx <= sqrt(V(B1) V(B2)) exp(-d(B1, B2)^2 / 4t)."""

    @property
    def name(self) -> str:
        return "davies_integral"

    @property
    def description(self) -> str:
        return "Davies integral bound for pairs of intervals"

    def applies_to(self, manifold: ModelManifold) -> bool:
        return isinstance(manifold, Circle) or (isinstance(manifold, Euclidean) and manifold.n == 1)

    def get_additional_info(self) -> Dict[str, Any]:
        return {'interval pairs': len(self.params.arcs)}

    def grid(self) -> List[Tuple[float, float]]:
        # the distance slot carries the index of the interval pair
        return [(float(i), t) for i in range(len(self.params.arcs)) for t in self.params.times]

    def evaluate(self, d: float, t: float) -> CheckPoint:
        m = self.manifold
        first, second = self.params.arcs[int(d)]
        for arc in (first, second):
            if not 0 < arc[1] - arc[0] <= m.total_volume:
                raise PrecisionError(f"Interval {arc} is not a proper arc of {m.tag}")

        def integrand(y: float, x: float) -> float:
            return heat_kernel(m, x, y, t, self.tol)

        lhs, error = integrate.dblquad(integrand, first[0], first[1], second[0], second[1],
                                       epsabs=0.0, epsrel=self.tol.quad_tol)
        if error > 100 * self.tol.quad_tol * abs(lhs) + 1e-300:
            raise PrecisionError(f"Davies quadrature did not converge (error {error:.3g})")
        gap = set_distance(m, first, second)
        log_rhs = (0.5 * math.log((first[1] - first[0]) * (second[1] - second[0]))
                   - gap * gap / (4.0 * t))
        return CheckPoint(gap, t, lhs, math.exp(log_rhs), ratio_margin(math.log(lhs), log_rhs))
