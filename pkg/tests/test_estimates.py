import math

import mpmath
from pytest import approx, mark, raises
from scipy.optimize import minimize_scalar

from core.errors import DomainError
from core.estimates import (
    alpha_star, c_n, g_function, g_max, gradient_rhs, hamilton_gradient_rhs,
    hamilton_laplacian_rhs, harnack_log_factor, laplacian_rhs, li_yau_gradient_rhs,
    one_minus_alpha_star,
)


def _c_n_high_precision(n):
    mpmath.mp.dps = 50
    root = mpmath.sqrt(n * n + 1)
    return (mpmath.mpf(n) / 2 * mpmath.log(8 * (n + root)) + mpmath.loggamma(mpmath.mpf(n) / 2 + 1)
            + (5 - root) / 2)


@mark.parametrize("n", range(1, 11))
def test_c_n_against_high_precision(n):
    assert c_n(n) == approx(float(_c_n_high_precision(n)), rel=1e-12)


@mark.parametrize("n", range(1, 11))
def test_g_max_matches_numerical_maximum(n):
    value, x_sq = g_max(n)
    found = minimize_scalar(lambda x: -g_function(n, x), bounds=(0.0, 10.0), method='bounded',
                            options={'xatol': 1e-12})
    assert value == approx(-found.fun, rel=1e-10)
    assert x_sq == approx(found.x ** 2, rel=1e-4)


def test_bad_dimension():
    with raises(DomainError):
        c_n(0)
    with raises(DomainError):
        g_max(0)


def test_alpha_star_regimes():
    assert alpha_star(0.0, 1.0) == 0.5
    assert one_minus_alpha_star(0.0, 1.0) == 0.5
    # rho = 1e6: (sqrt(1 + rho) + sqrt(rho))^-2 is about 1/(4 rho)
    assert alpha_star(2000.0, 1.0) == approx(2.5e-7, rel=1e-5)
    assert one_minus_alpha_star(2000.0, 1.0) == approx(1 - 2.5e-7, rel=1e-12)
    assert alpha_star(1.0, 1.0) + one_minus_alpha_star(1.0, 1.0) == approx(1.0)


@mark.parametrize("d t n".split(), ((1.0, 1.0, 2), (5.0, 0.3, 1), (30.0, 2.0, 3)))
def test_sharp_form_relates_to_alpha_form(d, t, n):
    rho = d * d / (4 * t)
    log_s = math.log(math.sqrt(rho + 1) + math.sqrt(rho))
    a = alpha_star(d, t)
    gap = 0.5 * n * (math.log(2) + 2 * log_s + math.log(a))
    sharp = gradient_rhs(d, t, n)
    at_star = gradient_rhs(d, t, n, a)
    assert sharp.rhs - at_star.rhs == approx(gap, abs=1e-12)
    assert laplacian_rhs(d, t, n).rhs - laplacian_rhs(d, t, n, a).rhs == approx(4 * gap, abs=1e-11)
    assert sharp.sharp and not at_star.sharp
    assert sharp.lhs_coefficient == approx(at_star.lhs_coefficient)


def test_alpha_outside_unit_interval():
    with raises(DomainError):
        gradient_rhs(1.0, 1.0, 2, 1.0)
    with raises(DomainError):
        laplacian_rhs(1.0, 1.0, 2, 0.0)


def test_classical_right_sides():
    assert li_yau_gradient_rhs(2, 0.5) == 2.0
    assert harnack_log_factor(2, 1.0, 2.0, 2.0) == approx(math.log(2) + 1.0)
    with raises(DomainError):
        harnack_log_factor(2, 2.0, 1.0, 0.0)
    assert hamilton_gradient_rhs(math.e, 1.0, 3.0) == approx(1.0)
    assert hamilton_gradient_rhs(math.e, 1.0, 3.0, curvature=0.5) == approx(4.0)
    assert hamilton_laplacian_rhs(math.e, 1.0, 2) == approx(6.0)
