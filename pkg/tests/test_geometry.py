import math

import numpy as np
from pytest import approx, mark, raises
from scipy import integrate

from core.errors import DomainError, UsageError
from core.geometry import (
    Circle, Euclidean, Product, Sphere2, ball_integral, ball_volume, distance,
    euclidean_ball_volume, log_ball_volume, mvg_theta, point_at_distance, sphere_area,
    theta_profile, volume_comparison, volume_growth,
)

CYLINDER = Product((Euclidean(1), Circle(2 * math.pi)))
CATALOG = (Euclidean(1), Euclidean(2), Euclidean(3), Circle(2 * math.pi), Sphere2(), CYLINDER)


@mark.parametrize("n volume".split(), ((1, 2.0), (2, math.pi), (3, 4.0 * math.pi / 3.0)))
def test_euclidean_unit_ball(n, volume):
    assert euclidean_ball_volume(n, 1.0) == approx(volume, rel=1e-14)


def test_euclidean_ball_edge_cases():
    assert euclidean_ball_volume(2, 0.0) == 0.0
    with raises(DomainError):
        euclidean_ball_volume(0, 1.0)
    with raises(DomainError):
        euclidean_ball_volume(2, -1.0)


def test_circle_ball_saturates_at_total_length():
    c = Circle(2 * math.pi)
    assert ball_volume(c, 0.0, 1.0) == 2.0
    assert ball_volume(c, 0.0, 10.0) == approx(2 * math.pi)


def test_sphere_ball_volume():
    s = Sphere2()
    x = s.base_point()
    assert ball_volume(s, x, math.pi) == approx(4 * math.pi, rel=1e-14)
    assert ball_volume(s, x, math.pi / 2) == approx(2 * math.pi, rel=1e-14)
    # small balls look Euclidean
    assert ball_volume(s, x, 1e-6) == approx(math.pi * 1e-12, rel=1e-10)


@mark.parametrize("r", (0.3, 1.0, 2.5))
def test_cylinder_ball_is_flat_below_injectivity_radius(r):
    assert ball_volume(CYLINDER, CYLINDER.base_point(), r) == approx(math.pi * r * r, rel=1e-7)


def test_cylinder_ball_grows_linearly():
    r = 100.0
    expected = 2 * math.pi * 2 * r
    assert ball_volume(CYLINDER, CYLINDER.base_point(), r) == approx(expected, rel=1e-3)


@mark.parametrize("r", np.linspace(0.5, 8.0, 10))
def test_cylinder_ball_against_area_integral(r):
    half = min(r, math.pi)
    area, _ = integrate.dblquad(lambda a, b: 1.0, -half, half,
                                lambda b: -math.sqrt(max(r * r - b * b, 0.0)),
                                lambda b: math.sqrt(max(r * r - b * b, 0.0)),
                                epsabs=0.0, epsrel=1e-10)
    assert ball_volume(CYLINDER, CYLINDER.base_point(), float(r)) == approx(area, rel=1e-6)


@mark.parametrize("m", CATALOG)
def test_volume_ratio_never_increases(m):
    x = m.base_point()
    radii = np.linspace(0.01, 10.0, 200)
    ratios = [ball_volume(m, x, float(r)) / euclidean_ball_volume(m.dimension, float(r))
              for r in radii]
    assert ratios[0] <= 1.0 + 1e-6
    for previous, current in zip(ratios, ratios[1:]):
        assert current <= previous * (1 + 1e-6)


def test_log_ball_volume_matches_volume():
    s = Sphere2()
    assert log_ball_volume(s, 0.7) == approx(math.log(ball_volume(s, s.base_point(), 0.7)))
    assert log_ball_volume(Euclidean(3), 1e-200) == approx(
        math.log(4 * math.pi / 3) + 3 * math.log(1e-200))


@mark.parametrize("m", (Euclidean(2), Circle(3.0), Sphere2(), CYLINDER))
@mark.parametrize("d", (0.0, 0.4, 1.2))
def test_point_at_distance(m, d):
    x = m.base_point()
    assert distance(m, x, point_at_distance(m, x, d)) == approx(d, abs=1e-12)


def test_point_at_distance_beyond_diameter():
    with raises(UsageError):
        point_at_distance(Circle(2.0), 0.0, 1.5)


def test_product_split_caps_compact_factor():
    parts = CYLINDER.split_distance(5.0)
    assert parts[1] == approx(math.pi)
    assert parts[0] == approx(math.sqrt(25 - math.pi ** 2))
    assert CYLINDER.split_distance(4.0)[1] == approx(math.sqrt(8.0))


def test_nested_products_are_flattened():
    m = Product((Euclidean(1), Product((Circle(1.0), Sphere2()))))
    assert len(m.factors) == 3
    assert m.dimension == 4


def test_validate_point_rejects_wrong_shape():
    with raises(UsageError):
        distance(Euclidean(2), np.zeros(3), np.zeros(2))
    with raises(UsageError):
        distance(Sphere2(), np.array([1.0, 1.0, 0.0]), Sphere2().base_point())


def test_sphere_area_and_theta_profile():
    e2 = Euclidean(2)
    assert sphere_area(e2, e2.base_point(), 2.0) == approx(4 * math.pi)
    assert theta_profile(e2, e2.base_point(), 3.0) == approx(math.pi)
    s = Sphere2()
    profile = [theta_profile(s, s.base_point(), r) for r in (0.2, 0.8, 1.6, 2.4)]
    assert all(a >= b for a, b in zip(profile, profile[1:]))


def test_numeric_sphere_area_of_product():
    # no closed form for products, so the area is a difference quotient of volumes
    assert sphere_area(CYLINDER, CYLINDER.base_point(), 1.0) == approx(2 * math.pi, rel=1e-4)


def test_maximal_volume_growth():
    assert mvg_theta(Euclidean(2)) == approx(math.pi)
    assert mvg_theta(CYLINDER) is None
    assert mvg_theta(Sphere2()) is None


def test_volume_growth_constants():
    tau, constant = volume_growth(CYLINDER)
    assert tau == 1
    assert constant == approx(4 * math.pi)
    assert volume_growth(Euclidean(3))[0] == 3


@mark.parametrize("m", CATALOG)
def test_volume_comparison_is_ordered(m):
    x = m.base_point()
    for t in np.logspace(-2, 2, 9):
        for alpha in (0.1, 0.5, 0.9):
            for s in np.linspace(0.0, (1 - alpha) * t, 4):
                c = volume_comparison(m, x, float(t), alpha, float(s))
                assert c.inner <= c.middle * (1 + 1e-7)
                assert c.middle <= c.outer * (1 + 1e-7)


def test_volume_comparison_rejects_bad_alpha():
    with raises(DomainError):
        volume_comparison(Euclidean(1), 0.0, 1.0, 1.5, 0.0)


def test_ball_integral_of_constant():
    e2 = Euclidean(2)
    assert ball_integral(e2, e2.base_point(), 1.0, lambda p: 1.0) == approx(math.pi, rel=1e-8)
    s = Sphere2()
    assert ball_integral(s, s.base_point(), 1.0, lambda p: 1.0) == approx(
        2 * math.pi * (1 - math.cos(1.0)), rel=1e-8)
    c = Circle(4.0)
    assert ball_integral(c, 0.0, 1.0, lambda p: 1.0) == approx(2.0, rel=1e-10)


def test_ball_integral_beyond_injectivity_radius():
    with raises(UsageError):
        ball_integral(Circle(2.0), 0.0, 1.5, lambda p: 1.0)
