"""Consistency checks of the reference kernels against independent oracles."""

import math
import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from config.catalog import default_grid
from core.errors import PrecisionError
from core.geometry import Circle, Euclidean, ModelManifold, Sphere2, manifold_factors
from core.kernels import (
    circle_kernel, circle_kernel_images, circle_kernel_spectral, euclidean_kernel,
    heat_kernel, sphere2_kernel,
)
from core.pde_oracle import CrankNicolsonCircle
from core.report import SweepRecord, SweepReport
from core.suite import BaseSuite
from core.utils import integrate_1d, parse_grid
from core.verify import MONOTONE_SLACK

logger = logging.getLogger(__name__)

IMAGES_SPECTRAL_TOL = 1e-10
IMAGES_SPECTRAL_TIMES = 'log:0.001:1000:25'
PDE_TOL = 1e-5
PDE_TIMES = (1.0, 5.0)
NORMALIZATION_TOL = 1e-9
NORMALIZATION_TIMES = {'circle': (0.01, 0.1, 1.0, 10.0), 'sphere': (0.5, 1.0, 2.0),
                       'line': (0.01, 1.0, 100.0)}
SPHERE_NODES = 200
SEMIGROUP_TOL = 1e-7
SEMIGROUP_TIMES = (0.1, 1.0)
MONOTONE_POINTS = 50


def _agreement(m: ModelManifold, d: float, t: float, value: float, reference: float,
               scale: float, tolerance: float) -> SweepRecord:
    """Record |value - reference| / scale against a tolerance; the margin is 1 - error/tolerance."""
    margin = 1.0 - abs(value - reference) / scale / tolerance
    return SweepRecord(m.tag, m.dimension, d, t, None, value, reference, None,
                       margin, None, margin >= 0)


def _circle_distances(circle: Circle) -> Sequence[float]:
    return (0.0, 1.0, 0.5 * circle.L) if circle.L > 2.0 else (0.0, 0.25 * circle.L, 0.5 * circle.L)


def images_vs_spectral(circle: Circle, times: Sequence[float], series) -> List[SweepRecord]:
    """Both circle representations, with errors measured against the peak H(0, t)."""
    records = []
    for t in times:
        peak = circle_kernel_spectral(circle.L, 0.0, t, series)
        for d in _circle_distances(circle):
            records.append(_agreement(
                circle, d, t, circle_kernel_images(circle.L, d, t, series),
                circle_kernel_spectral(circle.L, d, t, series), peak, IMAGES_SPECTRAL_TOL))
    return records


def pde_vs_spectral(circle: Circle, times: Sequence[float], series) -> List[SweepRecord]:
    """One Crank-Nicolson march through all times, compared with the spectral kernel."""
    solver = CrankNicolsonCircle(circle.L)
    records = []
    for t in sorted(times):
        solver.march_to(t)
        peak = circle_kernel_spectral(circle.L, 0.0, t, series)
        for d in _circle_distances(circle):
            records.append(_agreement(circle, d, t, solver.value_at(d),
                                      circle_kernel_spectral(circle.L, d, t, series),
                                      peak, PDE_TOL))
    logger.debug(f"Crank-Nicolson mass drift: {max(solver.mass_history) - min(solver.mass_history):.3g}")
    return records


def _factor_mass(factor: ModelManifold, t: float, series, quad_tol: float) -> float:
    if isinstance(factor, Circle):
        half = 0.5 * factor.L
        return integrate_1d(lambda s: circle_kernel(factor.L, s, t, series), -half, half,
                            quad_tol, points=(0.0,))
    if isinstance(factor, Sphere2):
        nodes, weights = leggauss(SPHERE_NODES)
        values = np.array([sphere2_kernel(math.acos(x), t, series) for x in nodes])
        return float(2.0 * math.pi * np.dot(weights, values))
    if isinstance(factor, Euclidean) and factor.n == 1:
        return integrate_1d(lambda s: euclidean_kernel(1, abs(s), t), -math.inf, math.inf,
                            quad_tol, points=None)
    raise PrecisionError(f"No mass quadrature for {factor.tag}")


def _mass_times(m: ModelManifold) -> Optional[Sequence[float]]:
    kinds = set()
    for factor in manifold_factors(m):
        if isinstance(factor, Circle):
            kinds.add('circle')
        elif isinstance(factor, Sphere2):
            kinds.add('sphere')
        elif isinstance(factor, Euclidean) and factor.n == 1:
            kinds.add('line')
        else:
            return None
    # the most restrictive family decides the times
    for kind in ('sphere', 'circle', 'line'):
        if kind in kinds:
            return NORMALIZATION_TIMES[kind]
    return None


def normalization(m: ModelManifold, series, quad_tol: float) -> List[SweepRecord]:
    """Total mass of H(x, ., t); a product's mass is the product of factor masses."""
    times = _mass_times(m)
    if times is None:
        return []
    records = []
    for t in times:
        mass = math.prod(_factor_mass(f, t, series, quad_tol) for f in manifold_factors(m))
        records.append(_agreement(m, 0.0, t, mass, 1.0, 1.0, NORMALIZATION_TOL))
    return records


def semigroup(circle: Circle, times: Sequence[float], series, quad_tol: float) -> List[SweepRecord]:
    """Chapman-Kolmogorov on the circle with the time split in half."""
    records = []
    for t in times:
        half = 0.5 * t
        peak = circle_kernel(circle.L, 0.0, t, series)
        for d in _circle_distances(circle):
            def integrand(z: float) -> float:
                return circle_kernel(circle.L, z, half, series) * \
                    circle_kernel(circle.L, z - d, half, series)
            composed = integrate_1d(integrand, 0.0, circle.L, quad_tol, points=(d,))
            records.append(_agreement(circle, d, t, composed,
                                      circle_kernel(circle.L, d, t, series), peak, SEMIGROUP_TOL))
    return records


def on_diagonal_monotonicity(m: ModelManifold, times: Sequence[float], tol) -> SweepReport:
    """
    t^(n/2) H(p, p, t) must not decrease. Records: lower = previous value,
    reference = current value, margin_lower = relative increase.
    """
    x = m.base_point()
    records, skipped, previous = [], 0, None
    for t in times:
        try:
            value = t ** (0.5 * m.dimension) * heat_kernel(m, x, x, t, tol)
        except PrecisionError as e:
            skipped += 1
            logger.warning(f"Skipped t={t:g} on {m.tag}: {e}")
            continue
        if previous is not None:
            step = value / previous - 1.0
            records.append(SweepRecord(m.tag, m.dimension, 0.0, t, None, previous, value, None,
                                       step, None, step >= -MONOTONE_SLACK))
        previous = value
    return SweepReport(
        suite='kernels:monotonicity', manifold=m.tag, grid={'t': list(times)},
        records=tuple(records), skipped=skipped, rel_tol=MONOTONE_SLACK,
    )


class KernelsSuite(BaseSuite):
    """Suite comparing the reference kernels with independent evaluations."""

    @property
    def name(self) -> str:
        return 'kernels'

    @property
    def description(self) -> str:
        return "Kernels: images vs spectral, Crank-Nicolson, mass, semigroup, monotonicity"

    def get_additional_info(self) -> Dict[str, Any]:
        return {
            'Images/spectral tolerance': IMAGES_SPECTRAL_TOL,
            'Crank-Nicolson tolerance': PDE_TOL,
            'Normalization tolerance': NORMALIZATION_TOL,
        }

    def _report(self, name: str, m: ModelManifold, records: List[SweepRecord],
                grid: Dict[str, Any]) -> SweepReport:
        return SweepReport(suite=f"kernels:{name}", manifold=m.tag, grid=grid,
                           records=tuple(records), rel_tol=0.0)

    def run_manifold(self, manifold: ModelManifold) -> List[SweepReport]:
        series = self.tol.series()
        quad_tol = min(self.tol.quad_tol, 1e-11)
        reports = []
        if isinstance(manifold, Circle):
            times = parse_grid(IMAGES_SPECTRAL_TIMES)
            reports.append(self._report('images_spectral', manifold,
                                        images_vs_spectral(manifold, times, series),
                                        {'t': list(times)}))
            reports.append(self._report('crank_nicolson', manifold,
                                        pde_vs_spectral(manifold, PDE_TIMES, series),
                                        {'t': list(PDE_TIMES)}))
            reports.append(self._report('semigroup', manifold,
                                        semigroup(manifold, SEMIGROUP_TIMES, series, quad_tol),
                                        {'t': list(SEMIGROUP_TIMES)}))
        mass = normalization(manifold, series, quad_tol)
        if mass:
            reports.append(self._report('normalization', manifold, mass,
                                        {'t': [r.t for r in mass]}))
        t_grid = default_grid(manifold)[1]
        times = tuple(float(v) for v in np.geomspace(min(t_grid), max(t_grid), MONOTONE_POINTS))
        reports.append(on_diagonal_monotonicity(manifold, times, self.tol))
        return reports
