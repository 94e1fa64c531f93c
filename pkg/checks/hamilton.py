"""Hamilton-type gradient and Laplacian checks for bounded heat solutions."""

import math
from functools import cached_property
from typing import Any, Dict

import numpy as np

from core.check import BaseCheck, CheckPoint
from core.errors import PrecisionError
from core.estimates import hamilton_gradient_rhs, hamilton_laplacian_rhs
from core.kernels import heat_kernel, kernel_derivatives
from core.utils import signed_margin

SUP_GRID_POINTS = 257
SUP_INFLATION = 1e-6


class HamiltonCheck(BaseCheck):
    """
    Shared set-up: u(z, s) = H(p, z, s0 + s) is a bounded positive solution
    from s = 0, and A is its supremum at s = 0 taken over a dense distance
    grid and inflated by a relative 1e-6.
    """

    needs_derivatives = True

    def get_additional_info(self) -> Dict[str, Any]:
        return {'initial time s0': self.params.shift, 'sup bound A': f"{self.sup_bound:.6g}"}

    @cached_property
    def sup_bound(self) -> float:
        m, s0 = self.manifold, self.params.shift
        span = m.diameter if math.isfinite(m.diameter) else 10.0 * math.sqrt(s0)
        best = 0.0
        for d in np.linspace(0.0, span, SUP_GRID_POINTS):
            try:
                best = max(best, heat_kernel(m, self.pole(), self.point(float(d)), s0, self.tol))
            except PrecisionError:
                continue  # far tail, never the maximum
        return best * (1.0 + SUP_INFLATION)

    def solution(self, d: float, t: float):
        return kernel_derivatives(self.manifold, self.pole(), self.point(d), self.params.shift + t,
                                  self.tol)


class HamiltonGradientCheck(HamiltonCheck):
    """t |grad ln u|^2 <= (1 + 2Kt) ln(A/u)."""

    @property
    def name(self) -> str:
        return "hamilton_gradient"

    @property
    def description(self) -> str:
        return "Hamilton gradient estimate"

    def evaluate(self, d: float, t: float) -> CheckPoint:
        ev = self.solution(d, t)
        lhs = t * ev.grad_log_sq
        rhs = hamilton_gradient_rhs(self.sup_bound, ev.value, t, self.params.curvature)
        return CheckPoint(d, t, lhs, rhs, signed_margin(rhs, lhs))


class HamiltonLaplacianCheck(HamiltonCheck):
    """t (Delta u / u) <= n + 4 ln(A/u)."""

    @property
    def name(self) -> str:
        return "hamilton_laplacian"

    @property
    def description(self) -> str:
        return "Hamilton Laplacian estimate"

    def evaluate(self, d: float, t: float) -> CheckPoint:
        ev = self.solution(d, t)
        lhs = t * ev.laplacian_ratio
        rhs = hamilton_laplacian_rhs(self.sup_bound, ev.value, self.manifold.dimension)
        return CheckPoint(d, t, lhs, rhs, signed_margin(rhs, lhs))
