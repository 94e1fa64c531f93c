import math

from pytest import approx, raises

from checks import get_check
from config.settings import DEFAULT_TOLERANCES
from core.check import CheckParams
from core.errors import UsageError
from core.geometry import Circle, Euclidean, Product, Sphere2
from core.report import VERDICT_INFORMATIVE, VERDICT_PASS
from suites import SUITE_REGISTRY, get_suite, resolve_suites
from suites.classical import check_to_sweep
from suites.kernels import on_diagonal_monotonicity

TWO_PI = 2 * math.pi
CYLINDER = Product((Euclidean(1), Circle(TWO_PI)))


def _suites(result):
    return {r.suite: r for r in result.reports}


def test_resolve_suites():
    assert resolve_suites('all') == list(SUITE_REGISTRY)
    assert resolve_suites('sandwich,kernels') == ['sandwich', 'kernels']
    with raises(UsageError):
        resolve_suites('nope')
    with raises(UsageError):
        get_suite('nope', [Euclidean(1)])


def test_sandwich_suite_with_overrides():
    options = {'d': (0.0, 1.0), 't': (0.1, 1.0), 'delta': (1.0,)}
    result = get_suite('sandwich', [Euclidean(1), Sphere2()], options=options).execute()
    assert result.passed
    assert [(r.suite, r.manifold) for r in result.reports] == [
        ('sandwich', 'rn:n=1'), ('sandwich:symmetric', 'rn:n=1'),
        ('sandwich', 's2'), ('sandwich:symmetric', 's2'),
    ]
    assert all(len(r.records) == 4 for r in result.reports)


def test_gradient_suite_adds_sharpness_on_flat_space():
    options = {'d': (0.0, 1.0), 't': (0.1, 1.0)}
    result = get_suite('gradient', [Euclidean(2), Circle(TWO_PI)], options=options).execute()
    reports = result.reports
    assert [r.suite for r in reports] == ['gradient', 'gradient:sharpness', 'gradient']
    assert reports[0].verdict == VERDICT_PASS
    assert reports[1].verdict == VERDICT_PASS
    assert reports[2].verdict == VERDICT_INFORMATIVE
    assert result.passed


def test_classical_suite_on_the_circle():
    params = CheckParams(distances=(0.0, 1.0), times=(0.2, 1.0))
    result = get_suite('classical', [Circle(TWO_PI)], options={'check_params': params}).execute()
    names = {r.suite for r in result.reports}
    assert 'classical:davies_integral' in names and 'classical:li_yau_gradient' in names
    assert result.passed


def test_check_reports_keep_their_points():
    report = get_check('cheeger_yau', Euclidean(1), CheckParams(distances=(0.0,), times=(1.0,))).run()
    sweep = check_to_sweep(report, Euclidean(1))
    assert sweep.suite == 'classical:cheeger_yau'
    assert len(sweep.records) == 1
    assert sweep.records[0].margin_lower == sweep.records[0].margin_upper


def test_asymptotics_suite():
    result = get_suite('asymptotics', [Euclidean(2), CYLINDER],
                       options={'t': (1.0, 10.0, 100.0, 1000.0)}).execute()
    by_suite = [(r.suite, r.manifold) for r in result.reports]
    assert ('asymptotics', 'rn:n=2') in by_suite
    assert ('asymptotics:slow_growth', CYLINDER.tag) in by_suite
    plane = result.reports[0]
    assert plane.verdict == VERDICT_PASS
    assert all(r.lower == approx(0.25) for r in plane.records)
    assert result.passed


def test_kernels_suite_on_the_circle():
    result = get_suite('kernels', [Circle(TWO_PI)]).execute()
    reports = _suites(result)
    assert set(reports) == {'kernels:images_spectral', 'kernels:crank_nicolson',
                            'kernels:semigroup', 'kernels:normalization',
                            'kernels:monotonicity'}
    for report in reports.values():
        assert report.verdict == VERDICT_PASS, report.suite


def test_kernels_suite_on_the_sphere():
    reports = _suites(get_suite('kernels', [Sphere2()]).execute())
    assert reports['kernels:normalization'].verdict == VERDICT_PASS
    assert reports['kernels:monotonicity'].verdict == VERDICT_PASS


def test_on_diagonal_value_is_constant_on_flat_space():
    report = on_diagonal_monotonicity(Euclidean(3), [0.01 * 1.5 ** k for k in range(50)],
                                      DEFAULT_TOLERANCES)
    assert report.verdict == VERDICT_PASS
    assert all(abs(r.margin_lower) < 1e-12 for r in report.records)
