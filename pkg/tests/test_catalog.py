import math

from pytest import approx, mark, raises

from config.catalog import CATALOG, default_grid, default_manifolds, list_catalog, parse_manifold
from config.settings import DEFAULT_TOLERANCES, Settings
from core.errors import UsageError
from core.geometry import Circle, Euclidean, Product, Sphere2
from core.utils import integrate_1d, parallel_map, parse_grid, ratio_margin, signed_margin


@mark.parametrize("spec expected".split(), (
    ('rn:n=2', Euclidean(2)),
    ('s2', Sphere2()),
    ('circle:L=6.2831853', Circle(6.2831853)),
    ('circle:L=2pi', Circle(2 * math.pi)),
    ('prod:rn:n=1+circle:L=2pi', Product((Euclidean(1), Circle(2 * math.pi)))),
    ('cylinder', Product((Euclidean(1), Circle(2 * math.pi)))),
))
def test_parse_manifold(spec, expected):
    assert parse_manifold(spec) == expected


@mark.parametrize("spec", ('', 'torus', 'rn:n=0', 'rn:n=x', 'circle:L=-1', 'prod:s2', 'rn:d=2'))
def test_parse_manifold_rejects(spec):
    with raises(UsageError):
        parse_manifold(spec)


def test_tags_parse_back():
    for m in default_manifolds():
        assert parse_manifold(m.tag) == m


def test_catalog_listing_and_grids():
    assert list_catalog() == list(CATALOG)
    d, t = default_grid(parse_manifold('circle'))
    assert d == (0.0, 1.0, math.pi)
    assert len(t) == 25 and t[0] == approx(0.01) and t[-1] == approx(1000.0)
    d, _ = default_grid(Circle(1.0))
    assert max(d) <= 0.5


def test_parse_grid_forms():
    assert parse_grid('0,0.5, 1') == (0.0, 0.5, 1.0)
    assert parse_grid('lin:0:1:3') == (0.0, 0.5, 1.0)
    log = parse_grid('log:0.01:100:5')
    assert log == approx((0.01, 0.1, 1.0, 10.0, 100.0))


@mark.parametrize("text", ('', 'log:0:1:3', 'log:1:2', 'lin:a:b:3', '1,two', 'log:1:2:0'))
def test_parse_grid_rejects(text):
    with raises(UsageError):
        parse_grid(text)


def test_margins():
    assert ratio_margin(math.log(0.5), 0.0) == approx(0.5)
    assert ratio_margin(0.0, 0.0) == 0.0
    assert signed_margin(2.0, 1.0) == approx(0.5)
    assert signed_margin(1.0, 2.0) == approx(-0.5)


def test_integrate_1d():
    assert integrate_1d(math.sin, 0.0, math.pi, 1e-10) == approx(2.0, rel=1e-10)
    assert integrate_1d(math.sin, 1.0, 1.0, 1e-10) == 0.0


def test_parallel_map_keeps_order():
    items = list(range(20))
    assert parallel_map(lambda v: v * v, items, threads=4) == [v * v for v in items]


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv('HEATBOUND_REL_TOL', '1e-6')
    monkeypatch.setenv('HEATBOUND_THREADS', '3')
    settings = Settings()
    assert settings.threads == 3
    tol = settings.tolerances()
    assert tol.rel_tol == 1e-6
    assert tol.series_tol == DEFAULT_TOLERANCES.series_tol


def test_settings_reject_bad_values(monkeypatch):
    monkeypatch.setenv('HEATBOUND_SERIES_TOL', '0')
    with raises(ValueError):
        Settings()


def test_series_view():
    series = DEFAULT_TOLERANCES._replace(series_max_terms=50).series()
    assert series.n_max == 50
    assert series.t_min == DEFAULT_TOLERANCES.sphere_t_min
