"""
Crank-Nicolson reference solver for the heat equation on a circle.

Used only as an independent oracle for the series kernels: the march starts
from the spectral kernel at a small bootstrap time and integrates forward on
a uniform periodic grid.
"""

import math
import logging
from typing import List

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import solve_circulant

from core.errors import DomainError, require_positive
from core.kernels import circle_kernel_spectral

logger = logging.getLogger(__name__)

DEFAULT_NODES = 2048
BOOTSTRAP_FACTOR = 1e-4
STEP_RATIO = 2e-3


class CrankNicolsonCircle:
    """Periodic Crank-Nicolson march of the circle heat kernel centred at 0."""

    def __init__(self, L: float, nodes: int = DEFAULT_NODES,
                 bootstrap_factor: float = BOOTSTRAP_FACTOR, step_ratio: float = STEP_RATIO):
        require_positive("L", L)
        if nodes < 16:
            raise DomainError(f"Crank-Nicolson grid needs at least 16 nodes, got {nodes}")
        self.L = L
        self.nodes = nodes
        self.spacing = L / nodes
        self.step_ratio = step_ratio
        self.t0 = bootstrap_factor * L * L
        self.grid = np.arange(nodes) * self.spacing
        arcs = np.minimum(self.grid, L - self.grid)
        self.values = np.array([circle_kernel_spectral(L, a, self.t0) for a in arcs])
        self.time = self.t0
        self.steps = 0
        self.mass_history: List[float] = [self.mass()]

    def mass(self) -> float:
        """Discrete integral of the current solution."""
        return float(np.sum(self.values) * self.spacing)

    def _step(self, dt: float):
        lam = dt / (2.0 * self.spacing ** 2)
        u = self.values
        rhs = u + lam * (np.roll(u, 1) - 2.0 * u + np.roll(u, -1))
        column = np.zeros(self.nodes)
        column[0] = 1.0 + 2.0 * lam
        column[1] = -lam
        column[-1] = -lam
        self.values = solve_circulant(column, rhs)
        self.time += dt
        self.steps += 1
        self.mass_history.append(self.mass())

    def march_to(self, t: float):
        """Advance to time t with geometrically growing steps."""
        if t < self.time:
            raise DomainError(f"Cannot march backwards from t={self.time:g} to t={t:g}")
        if t == self.time:
            return
        count = max(1, math.ceil(math.log(t / self.time) / math.log1p(self.step_ratio)))
        times = self.time * (t / self.time) ** (np.arange(1, count + 1) / count)
        previous = self.time
        for target in times:
            self._step(float(target) - previous)
            previous = float(target)
        self.time = t
        logger.debug(f"Marched circle L={self.L:g} to t={t:g} in {self.steps} steps")

    def value_at(self, d: float) -> float:
        """Periodic cubic-spline interpolation of the solution at arc position d."""
        x = np.append(self.grid, self.L)
        y = np.append(self.values, self.values[0])
        spline = CubicSpline(x, y, bc_type='periodic')
        return float(spline(abs(d) % self.L))


def pde_oracle_circle(L: float, d: float, t: float, nodes: int = DEFAULT_NODES) -> float:
    """Circle heat kernel at arc distance d and time t by Crank-Nicolson."""
    require_positive("L", L)
    t0 = BOOTSTRAP_FACTOR * L * L
    if t < 2.0 * t0:
        raise DomainError(f"PDE oracle needs t >= {2.0 * t0:g} for L={L:g}, got {t:g}")
    solver = CrankNicolsonCircle(L, nodes)
    solver.march_to(t)
    return solver.value_at(d)
