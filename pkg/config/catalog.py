"""Manifold spec strings and the default catalog with its sweep grids."""

import math
import re
from typing import Dict, List, NamedTuple, Tuple

from core.errors import DomainError, UsageError
from core.geometry import Circle, Euclidean, ModelManifold, Product, Sphere2
from core.utils import parse_grid

_PI_VALUE = re.compile(r'^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*$')


class CatalogEntry(NamedTuple):
    spec: str
    description: str
    default_d: str
    default_t: str


# Complete catalog registry with default (d, t) grids
CATALOG: Dict[str, CatalogEntry] = {
    'rn1': CatalogEntry('rn:n=1', 'Real line', '0,0.5,1,2,5', 'log:0.01:100:9'),
    'rn2': CatalogEntry('rn:n=2', 'Euclidean plane', '0,0.5,1,2,5', 'log:0.01:100:9'),
    'rn3': CatalogEntry('rn:n=3', 'Euclidean 3-space', '0,0.5,1,2,5', 'log:0.01:100:9'),
    'circle': CatalogEntry('circle:L=2pi', 'Circle of circumference 2 pi',
                           '0,1,3.141592653589793', 'log:0.01:1000:25'),
    's2': CatalogEntry('s2', 'Unit round 2-sphere', '0,0.5,1,2,3', 'log:0.001:10:13'),
    'cylinder': CatalogEntry('prod:rn:n=1+circle:L=2pi', 'Flat cylinder R x S^1',
                             '0,0.5,1,2,4', 'log:0.01:100:9'),
}


def _parse_number(text: str) -> float:
    match = _PI_VALUE.match(text)
    try:
        if match:
            factor = match.group(1)
            return (float(factor) if factor not in ('', '+') else 1.0) * math.pi
        return float(text)
    except ValueError:
        raise UsageError(f"'{text}' is not a number")


def _parse_atom(spec: str) -> ModelManifold:
    spec = spec.strip()
    if spec == 's2':
        return Sphere2()
    kind, _, rest = spec.partition(':')
    key, _, value = rest.partition('=')
    if kind == 'rn' and key == 'n':
        try:
            return Euclidean(int(value))
        except (ValueError, DomainError):
            raise UsageError(f"Bad Euclidean dimension in '{spec}'")
    if kind == 'circle' and key == 'L':
        try:
            return Circle(_parse_number(value))
        except DomainError as e:
            raise UsageError(str(e))
    raise UsageError(f"Unknown manifold spec '{spec}'")


def parse_manifold(spec: str) -> ModelManifold:
    """
    Parse a manifold spec string.

    Accepted forms: rn:n=2, circle:L=6.2831853 (or L=2pi), s2 and
    prod:A+B+... with atoms of the previous forms.

    Raises:
        UsageError: If the spec is malformed
    """
    spec = (spec or '').strip()
    if spec in CATALOG:
        spec = CATALOG[spec].spec
    if spec.startswith('prod:'):
        parts = [p for p in spec[len('prod:'):].split('+') if p.strip()]
        if len(parts) < 2:
            raise UsageError(f"Product spec '{spec}' needs at least two factors")
        return Product(tuple(_parse_atom(p) for p in parts))
    return _parse_atom(spec)


def default_manifolds() -> List[ModelManifold]:
    return [parse_manifold(entry.spec) for entry in CATALOG.values()]


def default_grid(m: ModelManifold) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """Default (d, t) grid of the catalog entry matching m, or a generic one."""
    for entry in CATALOG.values():
        if parse_manifold(entry.spec) == m:
            return parse_grid(entry.default_d), parse_grid(entry.default_t)
    distances = tuple(d for d in (0.0, 0.5, 1.0, 2.0) if d <= m.diameter)
    return distances, parse_grid('log:0.01:100:9')


def list_catalog() -> list:
    """List all catalog keys."""
    return list(CATALOG.keys())
