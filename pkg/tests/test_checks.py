import math

from pytest import approx, mark, raises

from checks import CHECK_REGISTRY, applicable_checks, get_check
from core.check import CheckParams
from core.errors import UsageError
from core.estimates import check_classical
from core.geometry import Circle, Euclidean, Product, Sphere2

TWO_PI = 2 * math.pi
CYLINDER = Product((Euclidean(1), Circle(TWO_PI)))
SMALL = CheckParams(distances=(0.0, 0.5, 1.5), times=(0.1, 0.5, 2.0))


@mark.parametrize("n", (1, 2, 3))
def test_li_yau_is_an_equality_on_flat_space(n):
    report = get_check('li_yau_gradient', Euclidean(n), SMALL).run()
    assert report.points
    for p in report.points:
        assert p.margin == approx(0.0, abs=1e-12)


@mark.parametrize("m", (Euclidean(2), Circle(TWO_PI), Sphere2(), CYLINDER))
@mark.parametrize("name", ('li_yau_gradient', 'harnack', 'cheeger_yau', 'hamilton_gradient',
                           'hamilton_laplacian'))
def test_classical_inequalities_hold(m, name):
    report = get_check(name, m, SMALL).run()
    assert report.points
    assert report.passed, report.worst


@mark.parametrize("m", (Euclidean(1), Euclidean(2), Circle(TWO_PI), Sphere2()))
def test_mean_value_inequality(m):
    params = CheckParams(distances=(0.0, 0.5), times=(0.2, 1.0))
    report = get_check('mean_value', m, params).run()
    assert report.passed, report.worst


@mark.parametrize("m", (Euclidean(1), Circle(TWO_PI)))
def test_davies_integral_bound(m):
    report = get_check('davies_integral', m, CheckParams(times=(0.1, 1.0))).run()
    assert len(report.points) == 2 * len(CheckParams().arcs)
    assert report.passed, report.worst


def test_applicability():
    assert 'davies_integral' not in applicable_checks(Sphere2())
    assert 'mean_value' not in applicable_checks(Euclidean(3))
    assert set(applicable_checks(Circle(TWO_PI))) == set(CHECK_REGISTRY)
    with raises(UsageError):
        get_check('davies_integral', Sphere2())


def test_unknown_check():
    with raises(UsageError):
        get_check('nash', Euclidean(1))


def test_check_classical_shortcut():
    report = check_classical('cheeger_yau', Sphere2(), SMALL)
    assert report.name == 'cheeger_yau'
    assert report.manifold == 's2'
    assert report.worst_margin >= -1e-9


def test_hamilton_bound_is_the_initial_peak():
    check = get_check('hamilton_gradient', Euclidean(1), SMALL)
    peak = 1 / math.sqrt(4 * math.pi * SMALL.shift)
    assert check.sup_bound == approx(peak, rel=2e-6)
    assert check.sup_bound >= peak
