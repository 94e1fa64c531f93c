import math

from pytest import approx, raises
from scipy.optimize import minimize_scalar

from core.bounds import upper_bound
from core.errors import UsageError
from core.geometry import Euclidean, Sphere2, point_at_distance
from core.kernels import heat_kernel, log_heat_kernel
from core.optimize import DELTA_MIN, golden_section_min, optimize_delta


def test_golden_section_on_parabola():
    x, fx = golden_section_min(lambda v: (v - 1.3) ** 2 + 2.0, 0.0, 4.0, tol=1e-9)
    assert x == approx(1.3, abs=1e-6)
    assert fx == approx(2.0, abs=1e-12)


def test_lower_side_runs_to_the_edge_on_flat_space():
    m = Euclidean(2)
    x = m.base_point()
    y = point_at_distance(m, x, 1.0)
    best = optimize_delta(m, x, y, 1.0, 'lower')
    assert best.at_boundary
    assert best.delta == approx(DELTA_MIN)
    assert best.value == approx(heat_kernel(m, x, y, 1.0), rel=1e-5)


def test_upper_side_has_an_interior_optimum():
    m = Euclidean(2)
    x = m.base_point()
    y = point_at_distance(m, x, 2.0)
    t = 0.5
    best = optimize_delta(m, x, y, t, 'upper')
    assert not best.at_boundary
    for delta in (0.1, 0.5, 1.0, 2.0, 10.0):
        assert best.value <= upper_bound(m, x, y, t, delta).value * (1 + 1e-12)
    assert best.value >= heat_kernel(m, x, y, t)

    reference = minimize_scalar(
        lambda s: upper_bound(m, x, y, t, math.exp(s)).log_value,
        bracket=(math.log(best.delta) - 1.0, math.log(best.delta), math.log(best.delta) + 1.0))
    assert math.log(best.value) == approx(reference.fun, abs=1e-8)


def test_symmetric_upper_side_on_sphere():
    m = Sphere2()
    x = m.base_point()
    y = point_at_distance(m, x, 1.0)
    best = optimize_delta(m, x, y, 0.3, 'upper', symmetric=True)
    assert best.bound.family == 'upper_symmetric'
    assert best.value >= heat_kernel(m, x, y, 0.3)


def test_unknown_side():
    m = Euclidean(1)
    with raises(UsageError):
        optimize_delta(m, 0.0, 1.0, 1.0, 'middle')


def test_upper_side_far_from_the_pole():
    m = Euclidean(1)
    best = optimize_delta(m, 0.0, 40.0, 1.0, 'upper')
    assert math.isfinite(best.value)
    assert best.bound.log_value >= log_heat_kernel(m, 0.0, 40.0, 1.0)
