"""Check for the Li-Yau gradient estimate."""

from core.check import BaseCheck, CheckPoint
from core.estimates import li_yau_gradient_rhs
from core.kernels import kernel_derivatives
from core.utils import signed_margin


class LiYauGradientCheck(BaseCheck):
    """|grad u|^2 / u^2 - u_t / u <= n / 2t for u = H(p, ., t)."""

    needs_derivatives = True

    @property
    def name(self) -> str:
        return "li_yau_gradient"

    @property
    def description(self) -> str:
        return "Li-Yau gradient estimate"

    def evaluate(self, d: float, t: float) -> CheckPoint:
        ev = kernel_derivatives(self.manifold, self.pole(), self.point(d), t, self.tol)
        lhs = ev.grad_log_sq - ev.dt_log
        rhs = li_yau_gradient_rhs(self.manifold.dimension, t)
        return CheckPoint(d, t, lhs, rhs, signed_margin(rhs, lhs))
