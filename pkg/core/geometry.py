"""
Model-manifold catalog: distances, geodesic-ball volumes and sphere areas.

Every catalog member has Ric >= 0 and is homogeneous, so ball volumes do not
depend on the centre point. Points are plain values:

    Euclidean(n)  numpy array of shape (n,)
    Circle(L)     float reduced mod L
    Sphere2       unit numpy 3-vector
    Product       tuple with one point per factor
"""

import math
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from config.settings import DEFAULT_TOLERANCES, ToleranceConfig
from core.errors import DomainError, PrecisionError, UsageError, require_nonnegative
from core.utils import integrate_1d

logger = logging.getLogger(__name__)

Point = Union[float, np.ndarray, tuple]

SPHERE_NORM_TOL = 1e-12


def euclidean_ball_volume(n: int, r: float) -> float:
    """Volume pi^(n/2) r^n / Gamma(n/2 + 1) of the radius-r ball in R^n."""
    if n < 1:
        raise DomainError(f"Dimension must be at least 1, got {n}")
    require_nonnegative("radius", r)
    if r == 0:
        return 0.0
    return math.exp(log_euclidean_ball_volume(n, r))


def log_euclidean_ball_volume(n: int, r: float) -> float:
    """Natural log of euclidean_ball_volume, finite for every r > 0."""
    return 0.5 * n * math.log(math.pi) + n * math.log(r) - gammaln(0.5 * n + 1.0)


class VolumeData(NamedTuple):
    """Ball volume, sphere area and the Euclidean comparison at one radius."""
    radius: float
    volume: float
    area: float
    euclidean_volume: float


class VolumeComparison(NamedTuple):
    """V(sqrt(alpha t + s)) <= V(sqrt(t)) <= alpha^(-n/2) V(sqrt(alpha t))."""
    inner: float
    middle: float
    outer: float


class ModelManifold(ABC):
    """Base class for every catalog geometry."""

    @property
    @abstractmethod
    def tag(self) -> str:
        """Spec string that parses back to this manifold."""

    @property
    @abstractmethod
    def dimension(self) -> int:
        """Total dimension n."""

    @property
    @abstractmethod
    def diameter(self) -> float:
        """Largest distance between two points (inf when non-compact)."""

    @property
    def injectivity_radius(self) -> float:
        return self.diameter

    @property
    def is_compact(self) -> bool:
        return math.isfinite(self.diameter)

    @property
    @abstractmethod
    def total_volume(self) -> float:
        """Riemannian volume of the whole manifold (inf when non-compact)."""

    @abstractmethod
    def base_point(self) -> Point:
        """Canonical reference point used by sweeps."""

    @abstractmethod
    def validate_point(self, p) -> Point:
        """Return p normalised for this manifold or raise UsageError."""

    @abstractmethod
    def distance(self, p: Point, q: Point) -> float:
        """Geodesic distance between two validated points."""

    @abstractmethod
    def ball_volume(self, r: float, tol: float) -> float:
        """Volume of any geodesic ball of radius r."""

    @abstractmethod
    def sphere_area(self, r: float) -> Optional[float]:
        """Closed-form area of a geodesic sphere, or None when unavailable."""

    @abstractmethod
    def step(self, x: Point, d: float) -> Point:
        """Point at distance d from x along a fixed direction."""

    @abstractmethod
    def tangent_basis(self, x: Point) -> Tuple[np.ndarray, ...]:
        """Orthonormal tangent basis at x, in the coordinates used by exp_map."""

    @abstractmethod
    def exp_map(self, x: Point, v: np.ndarray) -> Point:
        """Exponential map at x applied to a flat tangent vector v."""

    def __str__(self) -> str:
        return self.tag


@dataclass(frozen=True)
class Euclidean(ModelManifold):
    """Flat R^n."""
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"Euclidean dimension must be a positive integer, got {self.n}")

    @property
    def tag(self) -> str:
        return f"rn:n={self.n}"

    @property
    def dimension(self) -> int:
        return self.n

    @property
    def diameter(self) -> float:
        return math.inf

    @property
    def total_volume(self) -> float:
        return math.inf

    def base_point(self) -> np.ndarray:
        return np.zeros(self.n)

    def validate_point(self, p) -> np.ndarray:
        arr = np.atleast_1d(np.asarray(p, dtype=float))
        if arr.shape != (self.n,):
            raise UsageError(f"Point of shape {arr.shape} does not belong to {self.tag}")
        return arr

    def distance(self, p, q) -> float:
        return float(np.linalg.norm(p - q))

    def ball_volume(self, r: float, tol: float) -> float:
        return euclidean_ball_volume(self.n, r)

    def sphere_area(self, r: float) -> float:
        return self.n * euclidean_ball_volume(self.n, 1.0) * r ** (self.n - 1)

    def step(self, x, d: float) -> np.ndarray:
        y = np.array(x, dtype=float)
        y[0] += d
        return y

    def tangent_basis(self, x) -> Tuple[np.ndarray, ...]:
        return tuple(np.eye(self.n))

    def exp_map(self, x, v) -> np.ndarray:
        return x + np.asarray(v, dtype=float)


@dataclass(frozen=True)
class Circle(ModelManifold):
    """Flat circle of circumference L."""
    L: float

    def __post_init__(self):
        if not self.L > 0 or not math.isfinite(self.L):
            raise DomainError(f"Circle circumference must be positive, got {self.L}")

    @property
    def tag(self) -> str:
        return f"circle:L={self.L!r}"

    @property
    def dimension(self) -> int:
        return 1

    @property
    def diameter(self) -> float:
        return 0.5 * self.L

    @property
    def total_volume(self) -> float:
        return self.L

    def base_point(self) -> float:
        return 0.0

    def validate_point(self, p) -> float:
        arr = np.asarray(p, dtype=float)
        if arr.size != 1:
            raise UsageError(f"Point of shape {arr.shape} does not belong to {self.tag}")
        return float(arr.reshape(())) % self.L

    def distance(self, p, q) -> float:
        delta = abs(p - q) % self.L
        return min(delta, self.L - delta)

    def ball_volume(self, r: float, tol: float) -> float:
        return min(2.0 * r, self.L)

    def sphere_area(self, r: float) -> float:
        return 2.0 if r < self.diameter else 0.0

    def step(self, x, d: float) -> float:
        return (x + d) % self.L

    def tangent_basis(self, x) -> Tuple[np.ndarray, ...]:
        return (np.ones(1),)

    def exp_map(self, x, v) -> float:
        return (x + float(np.asarray(v).reshape(-1)[0])) % self.L


@dataclass(frozen=True)
class Sphere2(ModelManifold):
    """Unit round 2-sphere (Ric = 1)."""

    @property
    def tag(self) -> str:
        return "s2"

    @property
    def dimension(self) -> int:
        return 2

    @property
    def diameter(self) -> float:
        return math.pi

    @property
    def total_volume(self) -> float:
        return 4.0 * math.pi

    def base_point(self) -> np.ndarray:
        return np.array([0.0, 0.0, 1.0])

    def validate_point(self, p) -> np.ndarray:
        arr = np.asarray(p, dtype=float)
        if arr.shape != (3,):
            raise UsageError(f"Point of shape {arr.shape} does not belong to s2")
        if abs(np.linalg.norm(arr) - 1.0) > SPHERE_NORM_TOL:
            raise UsageError(f"Sphere point {arr} is not a unit vector")
        return arr

    def distance(self, p, q) -> float:
        # atan2 form stays accurate near 0 and pi where arccos loses digits
        return float(math.atan2(np.linalg.norm(np.cross(p, q)), float(np.dot(p, q))))

    def ball_volume(self, r: float, tol: float) -> float:
        return 4.0 * math.pi * math.sin(0.5 * min(r, math.pi)) ** 2

    def sphere_area(self, r: float) -> float:
        return 2.0 * math.pi * math.sin(r) if r < math.pi else 0.0

    def step(self, x, d: float) -> np.ndarray:
        e = self.tangent_basis(x)[0]
        y = math.cos(d) * x + math.sin(d) * e
        return y / np.linalg.norm(y)

    def tangent_basis(self, x) -> Tuple[np.ndarray, ...]:
        a = np.array([1.0, 0.0, 0.0]) if abs(x[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        e1 = a - np.dot(a, x) * x
        e1 /= np.linalg.norm(e1)
        e2 = np.cross(x, e1)
        return (e1, e2)

    def exp_map(self, x, v) -> np.ndarray:
        basis = self.tangent_basis(x)
        v = np.asarray(v, dtype=float)
        w = v[0] * basis[0] + v[1] * basis[1]
        norm = float(np.linalg.norm(w))
        if norm == 0:
            return x.copy()
        y = math.cos(norm) * x + math.sin(norm) * w / norm
        return y / np.linalg.norm(y)


@dataclass(frozen=True)
class Product(ModelManifold):
    """Riemannian product; nested products are flattened."""
    factors: Tuple[ModelManifold, ...]

    def __post_init__(self):
        flat = []
        for factor in self.factors:
            if isinstance(factor, Product):
                flat.extend(factor.factors)
            elif isinstance(factor, ModelManifold):
                flat.append(factor)
            else:
                raise UsageError(f"Product factor {factor!r} is not a catalog manifold")
        if len(flat) < 2:
            raise UsageError("A product needs at least two factors")
        object.__setattr__(self, 'factors', tuple(flat))

    @property
    def tag(self) -> str:
        return "prod:" + "+".join(f.tag for f in self.factors)

    @property
    def dimension(self) -> int:
        return sum(f.dimension for f in self.factors)

    @property
    def diameter(self) -> float:
        return math.sqrt(sum(f.diameter ** 2 for f in self.factors))

    @property
    def injectivity_radius(self) -> float:
        return min(f.injectivity_radius for f in self.factors)

    @property
    def total_volume(self) -> float:
        return math.prod(f.total_volume for f in self.factors)

    @property
    def is_flat(self) -> bool:
        return not any(isinstance(f, Sphere2) for f in self.factors)

    def rest(self) -> ModelManifold:
        """Product of every factor but the first."""
        if len(self.factors) == 2:
            return self.factors[1]
        return Product(self.factors[1:])

    def base_point(self) -> tuple:
        return tuple(f.base_point() for f in self.factors)

    def validate_point(self, p) -> tuple:
        if not isinstance(p, (tuple, list)) or len(p) != len(self.factors):
            raise UsageError(f"Product point must have {len(self.factors)} components")
        return tuple(f.validate_point(c) for f, c in zip(self.factors, p))

    def factor_distances(self, p, q) -> Tuple[float, ...]:
        return tuple(f.distance(a, b) for f, a, b in zip(self.factors, p, q))

    def distance(self, p, q) -> float:
        return math.sqrt(sum(d * d for d in self.factor_distances(p, q)))

    def ball_volume(self, r: float, tol: float) -> float:
        return _product_ball_volume(self, float(r), float(tol))

    def sphere_area(self, r: float) -> Optional[float]:
        return None

    def split_distance(self, d: float) -> Tuple[float, ...]:
        """Split d over the factors: equal squares, capped at compact diameters."""
        if d > self.diameter * (1 + 1e-12):
            raise UsageError(f"Distance {d} exceeds the diameter of {self.tag}")
        assigned = [None] * len(self.factors)
        remaining = d * d
        free = list(range(len(self.factors)))
        changed = True
        while changed and free:
            changed = False
            share = remaining / len(free)
            for i in list(free):
                cap = self.factors[i].diameter
                if cap * cap < share:
                    assigned[i] = cap
                    remaining -= cap * cap
                    free.remove(i)
                    changed = True
        share = max(remaining, 0.0) / len(free) if free else 0.0
        for i in free:
            assigned[i] = math.sqrt(share)
        return tuple(assigned)

    def step(self, x, d: float) -> tuple:
        parts = self.split_distance(d)
        return tuple(f.step(c, di) for f, c, di in zip(self.factors, x, parts))

    def tangent_basis(self, x) -> Tuple[np.ndarray, ...]:
        n = self.dimension
        return tuple(np.eye(n))

    def exp_map(self, x, v) -> tuple:
        v = np.asarray(v, dtype=float)
        out, offset = [], 0
        for f, c in zip(self.factors, x):
            k = f.dimension
            out.append(f.exp_map(c, v[offset:offset + k]))
            offset += k
        return tuple(out)


def kink_radii(m: ModelManifold) -> Tuple[float, ...]:
    """Radii at which the ball volume of m stops being smooth."""
    if isinstance(m, Product):
        return tuple(sorted({r for f in m.factors for r in kink_radii(f)}))
    return (m.diameter,) if m.is_compact else ()


@lru_cache(maxsize=65536)
def _product_ball_volume(m: Product, r: float, tol: float) -> float:
    """Slice integral V(r) = int_0^r A_1(s) V_rest(sqrt(r^2 - s^2)) ds."""
    if r <= 0:
        return 0.0
    if r >= m.diameter:
        return m.total_volume
    first, rest = m.factors[0], m.rest()
    upper = min(r, first.diameter)

    def slice_volume(s: float) -> float:
        return first.sphere_area(s) * rest.ball_volume(math.sqrt(max(r * r - s * s, 0.0)), tol)

    breaks = [math.sqrt(r * r - k * k) for k in kink_radii(rest) if 0 < k < r]
    breaks = sorted(b for b in breaks if 0 < b < upper)
    return integrate_1d(slice_volume, 0.0, upper, tol, points=breaks)


def distance(m: ModelManifold, p, q) -> float:
    """Geodesic distance between p and q on m."""
    return m.distance(m.validate_point(p), m.validate_point(q))


def ball_volume(m: ModelManifold, x, r: float,
                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Volume V_x(r) of the geodesic ball of radius r (independent of x)."""
    if r < 0:
        raise DomainError(f"Radius must be non-negative, got {r}")
    m.validate_point(x)
    return m.ball_volume(r, tol.quad_tol)


def log_ball_volume(m: ModelManifold, r: float,
                    tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Natural log of the ball volume, exact for small Euclidean radii."""
    if isinstance(m, Euclidean):
        return log_euclidean_ball_volume(m.n, r)
    volume = m.ball_volume(r, tol.quad_tol)
    if volume <= 0:
        raise PrecisionError(f"Ball volume of radius {r} on {m.tag} underflowed")
    return math.log(volume)


def sphere_area(m: ModelManifold, x, r: float,
                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Area A_x(r) of the geodesic sphere of radius r."""
    if not r > 0:
        raise DomainError(f"Radius must be positive, got {r}")
    m.validate_point(x)
    if r >= m.diameter:
        return 0.0
    closed = m.sphere_area(r)
    if closed is not None:
        return closed
    h = max(tol.volume_step, tol.volume_step * r)
    lo = max(r - h, 0.0)
    fine = min(tol.quad_tol, 1e-13)
    return (m.ball_volume(r + h, fine) - m.ball_volume(lo, fine)) / (r + h - lo)


def theta_profile(m: ModelManifold, x, r: float,
                  tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """n^-1 r^(1-n) A_x(r), non-increasing in r under Ric >= 0."""
    n = m.dimension
    return sphere_area(m, x, r, tol) * r ** (1 - n) / n


def volume_data(m: ModelManifold, x, r: float,
                tol: ToleranceConfig = DEFAULT_TOLERANCES) -> VolumeData:
    """Bundle volume, area and Euclidean comparison at radius r."""
    return VolumeData(
        radius=r,
        volume=ball_volume(m, x, r, tol),
        area=sphere_area(m, x, r, tol) if r > 0 else 0.0,
        euclidean_volume=euclidean_ball_volume(m.dimension, r),
    )


def mvg_theta(m: ModelManifold) -> Optional[float]:
    """Maximal-volume-growth constant lim r^-n V(r), or None when it is zero."""
    factors = m.factors if isinstance(m, Product) else (m,)
    if any(f.is_compact for f in factors):
        return None
    return euclidean_ball_volume(m.dimension, 1.0)


def volume_growth(m: ModelManifold) -> Tuple[int, float]:
    """Return (tau, C_M) with V(R) ~ C_M R^tau as R -> infinity."""
    factors = m.factors if isinstance(m, Product) else (m,)
    tau = sum(f.dimension for f in factors if not f.is_compact)
    compact = math.prod(f.total_volume for f in factors if f.is_compact)
    omega = euclidean_ball_volume(tau, 1.0) if tau > 0 else 1.0
    return tau, omega * compact


def volume_comparison(m: ModelManifold, x, t: float, alpha: float, s: float,
                      tol: ToleranceConfig = DEFAULT_TOLERANCES) -> VolumeComparison:
    """Evaluate the three terms of the Bishop-Gromov time sandwich."""
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    if not 0 <= s <= (1 - alpha) * t:
        raise DomainError(f"s must lie in [0, (1 - alpha) t], got {s}")
    n = m.dimension
    return VolumeComparison(
        inner=ball_volume(m, x, math.sqrt(alpha * t + s), tol),
        middle=ball_volume(m, x, math.sqrt(t), tol),
        outer=alpha ** (-0.5 * n) * ball_volume(m, x, math.sqrt(alpha * t), tol),
    )


def point_at_distance(m: ModelManifold, x, d: float) -> Point:
    """Deterministic point at geodesic distance d from x."""
    require_nonnegative("distance", d)
    if d > m.diameter * (1 + 1e-12):
        raise UsageError(f"Distance {d} exceeds the diameter {m.diameter} of {m.tag}")
    x = m.validate_point(x)
    return m.validate_point(m.step(x, min(d, m.diameter)))


def exp_map(m: ModelManifold, x, v) -> Point:
    """Exponential map of m at x applied to a tangent vector in basis coordinates."""
    return m.exp_map(m.validate_point(x), v)


def ball_integral(m: ModelManifold, x, R: float, f: Callable[[Point], float],
                  tol: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Integrate f over the geodesic ball B_x(R) in exponential polar coordinates."""
    require_nonnegative("radius", R)
    if R > m.injectivity_radius:
        raise UsageError(f"Radius {R} exceeds the injectivity radius of {m.tag}")
    x = m.validate_point(x)
    n = m.dimension
    if n == 1:
        return integrate_1d(lambda s: f(m.exp_map(x, np.array([s]))), -R, R, tol.quad_tol)
    if n != 2:
        raise UsageError(f"Ball integrals are only available in dimension 1 and 2, not {n}")

    curved = isinstance(m, Sphere2)

    def integrand(phi: float, r: float) -> float:
        jacobian = math.sin(r) if curved else r
        v = np.array([r * math.cos(phi), r * math.sin(phi)])
        return jacobian * f(m.exp_map(x, v))

    value, error = integrate.dblquad(integrand, 0.0, R, 0.0, 2.0 * math.pi,
                                     epsabs=0.0, epsrel=tol.quad_tol)
    if error > 100 * tol.quad_tol * abs(value) + 1e-300:
        raise PrecisionError(f"Ball quadrature on {m.tag} did not converge (error {error:.3g})")
    return value


def manifold_factors(m: ModelManifold) -> Sequence[ModelManifold]:
    """Factors of a product, or the manifold itself."""
    return m.factors if isinstance(m, Product) else (m,)
