import math

import mpmath
import numpy as np
from hypothesis import given, settings
from hypothesis.strategies import floats, sampled_from
from pytest import approx, mark, raises

from core.bounds import (
    LiYauConstants, bounds_delta1, f_factor, li_yau_bounds, lower_bound, lower_bound_general,
    r_delta, t_lower, t_upper, tightness_comparison, upper_bound, upper_bound_general,
)
from core.errors import DomainError, PrecisionError
from core.geometry import Circle, Euclidean, Product, Sphere2, point_at_distance
from core.kernels import heat_kernel, log_heat_kernel

CATALOG = (Euclidean(1), Euclidean(2), Euclidean(3), Circle(2 * math.pi), Sphere2(),
           Product((Euclidean(1), Circle(2 * math.pi))))


def _pair(m, d):
    x = m.base_point()
    return x, point_at_distance(m, x, d)


@mark.parametrize("n", (1, 2, 3))
@mark.parametrize("delta", (0.1, 1.0, 10.0))
def test_lower_bound_is_exact_on_flat_space(n, delta):
    m = Euclidean(n)
    for d in np.linspace(0.0, 5.0, 10):
        for t in np.logspace(-2, 2, 10):
            x, y = _pair(m, float(d))
            lower = lower_bound(m, x, y, float(t), delta)
            assert lower.log_value + delta == approx(log_heat_kernel(m, x, y, float(t)), rel=1e-12,
                                                     abs=1e-12)


@given(sampled_from(CATALOG), floats(min_value=0.0, max_value=3.0),
       floats(min_value=0.01, max_value=10.0), sampled_from((0.1, 0.5, 1.0, 2.0, 10.0)))
@settings(max_examples=60, deadline=None)
def test_sandwich(m, d, t, delta):
    d = min(d, m.diameter)
    x, y = _pair(m, d)
    try:
        log_h = log_heat_kernel(m, x, y, t)
    except PrecisionError:
        return  # far tail of the sphere series, skipped by the sweeps too
    assert lower_bound(m, x, y, t, delta).log_value <= log_h + 1e-9
    assert upper_bound(m, x, y, t, delta).log_value >= log_h - 1e-9
    assert lower_bound(m, x, y, t, delta, symmetric=True).log_value <= log_h + 1e-9
    assert upper_bound(m, x, y, t, delta, symmetric=True).log_value >= log_h - 1e-9


def test_radius_solves_its_quadratic():
    for d, t, delta in ((0.0, 1.0, 1.0), (3.0, 0.2, 0.5), (1e4, 1.0, 1.0)):
        R = r_delta(d, t, delta)
        assert R * R + d * R == approx(delta * t, rel=1e-12)


def test_radius_against_high_precision():
    mpmath.mp.dps = 40
    d, t, delta = 1e5, 0.3, 2.0
    exact = (-mpmath.mpf(d) + mpmath.sqrt(mpmath.mpf(d) ** 2 + 4 * mpmath.mpf(delta) * t)) / 2
    assert r_delta(d, t, delta) == approx(float(exact), rel=1e-14)


def test_lower_time_degenerates_on_diagonal():
    assert t_lower(0.0, 1.0, 1.0) == (0.0, True)
    value, degenerate = t_lower(2.0, 1.0, 1.0)
    assert not degenerate
    assert value == approx(2.0 / math.sqrt(8.0))


def test_upper_time_branches():
    assert t_upper(0.0, 1.0, 1.0) == approx(2.0)
    assert t_upper(2.0, 1.0, 1.0) == approx(math.sqrt(2.0))


@mark.parametrize("delta rho".split(), ((0.1, 0.0), (1.0, 0.2), (1.0, 5.0), (10.0, 100.0)))
def test_polynomial_factor_exceeds_one(delta, rho):
    assert f_factor(delta, rho, 2) >= 1.0


def test_bad_inputs():
    m = Euclidean(1)
    with raises(DomainError):
        lower_bound(m, 0.0, 1.0, 1.0, 0.0)
    with raises(DomainError):
        upper_bound(m, 0.0, 1.0, -1.0, 1.0)
    with raises(DomainError):
        lower_bound_general(m, 0.0, 1.0, 1.0, 0.5, 2.0)
    with raises(DomainError):
        upper_bound_general(m, 0.0, 1.0, 1.0, 0.5, 0.5)


def test_general_bounds_reduce_to_the_optimised_ones():
    m = Euclidean(2)
    x, y = _pair(m, 1.5)
    t, delta = 0.7, 1.0
    R = r_delta(1.5, t, delta)
    T = t_lower(1.5, t, delta).value
    general = lower_bound_general(m, x, y, t, R, T)
    assert general.log_value <= log_heat_kernel(m, x, y, t) + 1e-12
    upper = upper_bound_general(m, x, y, t, R, t_upper(1.5, t, delta))
    assert upper.log_value >= log_heat_kernel(m, x, y, t) - 1e-12


@mark.parametrize("m", CATALOG)
def test_delta1_chains(m):
    for d in (0.0, 0.5, 1.0, 2.0):
        if d > m.diameter:
            continue
        x, y = _pair(m, d)
        for t in (0.05, 0.5, 5.0):
            try:
                log_h = log_heat_kernel(m, x, y, t)
            except PrecisionError:
                continue
            for chain in bounds_delta1(m, x, y, t).all():
                assert min(chain.link_margins()) >= -1e-9, chain.name
                for link in chain.links:
                    if chain.side == 'lower':
                        assert link.log_value <= log_h + 1e-9
                    else:
                        assert link.log_value >= log_h - 1e-9


def test_cheeger_yau_recovery_as_delta_vanishes():
    m = Sphere2()
    for d in (0.0, 1.0, 2.5):
        x, y = _pair(m, d)
        for t in (0.01, 0.1, 1.0):
            lower = lower_bound(m, x, y, t, 1e-6).value
            gauss = math.exp(-d * d / (4 * t)) / (4 * math.pi * t)
            assert lower == approx(gauss, rel=1e-3)
            if d <= 1.0 and t >= 0.1:
                assert heat_kernel(m, x, y, t) >= gauss * (1 - 1e-9)


def test_li_yau_bounds_are_flagged():
    m = Euclidean(2)
    x, y = _pair(m, 1.0)
    lower, upper = li_yau_bounds(m, x, y, 1.0)
    assert 'illustrative' in lower.flags and 'illustrative' in upper.flags
    assert lower.value < upper.value
    with raises(DomainError):
        li_yau_bounds(m, x, y, 1.0, LiYauConstants(delta=1.5))


def test_far_field_tightness():
    m = Euclidean(2)
    x, y = _pair(m, 40.0)
    comparison = tightness_comparison(m, x, y, 1.0)
    assert comparison.rho == approx(400.0)
    assert comparison.new_is_tighter


@mark.parametrize("m", (Euclidean(2), Circle(2 * math.pi), Sphere2(), CATALOG[-1]))
def test_lower_bound_is_the_general_bound_at_the_chosen_radius_and_time(m):
    for d in (0.5, 1.5, 3.0):
        x, y = _pair(m, d)
        for t in (0.3, 1.0, 4.0):
            for delta in (0.1, 1.0, 5.0):
                R = r_delta(d, t, delta)
                T = t_lower(d, t, delta).value
                general = lower_bound_general(m, x, y, t, R, T)
                assert general.value == approx(lower_bound(m, x, y, t, delta).value, rel=1e-12)


def test_upper_general_exponent_for_separated_balls():
    m = Euclidean(1)
    general = upper_bound_general(m, 0.0, 3.0, 4.0, 1.0, 20.0 / 3.0)
    assert general.exponent == approx(2.0 * 1.0 * 3.0 / (20.0 / 3.0), rel=1e-12)
    assert general.exponent == approx(0.9, rel=1e-12)


def test_upper_bound_worked_value_on_the_line():
    bound = upper_bound(Euclidean(1), 0.0, 3.0, 4.0, 1.0)
    f = math.exp(2.0) * (25.0 / 9.0) ** 0.25
    assert bound.R == approx(1.0, rel=1e-14)
    assert bound.f == approx(f, rel=1e-12)
    assert bound.volume_x == approx(2.0, rel=1e-13)
    assert bound.value == approx(f * math.exp(-9.0 / 16.0) / 2.0, rel=1e-12)


def test_delta1_chains_on_a_full_plane_grid():
    m = Euclidean(2)
    checked = 0
    for d in np.linspace(0.0, 6.0, 10):
        x, y = _pair(m, float(d))
        for t in np.logspace(-2, 2, 10):
            log_h = log_heat_kernel(m, x, y, float(t))
            for chain in bounds_delta1(m, x, y, float(t)).all():
                assert min(chain.link_margins()) >= -1e-9, chain.name
                for link in chain.links:
                    if chain.side == 'lower':
                        assert link.log_value <= log_h + 1e-9
                    else:
                        assert link.log_value >= log_h - 1e-9
            checked += 1
    assert checked == 100


def test_large_exponents_saturate_instead_of_overflowing():
    m = Euclidean(2)
    x, y = _pair(m, 1.0)
    bound = upper_bound(m, x, y, 1.0, 800.0, symmetric=True)
    assert bound.log_value > 709.0
    assert math.isfinite(bound.log_value)
    assert bound.value == math.inf
    far = upper_bound(Euclidean(1), 0.0, 40.0, 1.0, 1e3)
    assert far.f == math.inf
    assert math.isfinite(far.log_value)
