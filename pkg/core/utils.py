"""Utility functions shared by the numerical components."""

import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
from scipy import integrate

from core.errors import PrecisionError, UsageError

T = TypeVar('T')
R = TypeVar('R')

TINY = 1e-300
LOG_FLOAT_MAX = math.log(sys.float_info.max)


def parse_grid(text: str) -> Tuple[float, ...]:
    """
    Parse a grid specification.

    Accepted forms:
        log:a:b:k   k log-spaced values from a to b (a, b > 0)
        lin:a:b:k   k evenly spaced values from a to b
        x1,x2,...   explicit comma-separated values

    Raises:
        UsageError: If the text is malformed
    """
    text = (text or '').strip()
    if not text:
        raise UsageError("Empty grid specification")
    if text.startswith(('log:', 'lin:')):
        parts = text.split(':')
        if len(parts) != 4:
            raise UsageError(f"Grid '{text}' must look like log:a:b:k")
        try:
            a, b, k = float(parts[1]), float(parts[2]), int(parts[3])
        except ValueError:
            raise UsageError(f"Grid '{text}' has non-numeric bounds or count")
        if k < 1:
            raise UsageError(f"Grid '{text}' needs at least one point")
        if parts[0] == 'log':
            if a <= 0 or b <= 0:
                raise UsageError(f"Log grid '{text}' needs positive bounds")
            values = np.logspace(math.log10(a), math.log10(b), k)
        else:
            values = np.linspace(a, b, k)
        return tuple(float(v) for v in values)
    try:
        return tuple(float(v) for v in text.split(',') if v.strip())
    except ValueError:
        raise UsageError(f"Grid '{text}' is not a comma-separated list of numbers")


def integrate_1d(f: Callable[[float], float], a: float, b: float, tol: float,
                 points: Optional[Sequence[float]] = None) -> float:
    """Adaptive quadrature of f over [a, b] to relative tolerance tol."""
    if a == b:
        return 0.0
    inner = [p for p in (points or ()) if a < p < b]
    value, error = integrate.quad(f, a, b, epsabs=0.0, epsrel=tol, limit=400,
                                  points=inner or None)
    if error > 100 * tol * abs(value) + TINY:
        raise PrecisionError(f"Quadrature on [{a}, {b}] did not converge (error {error:.3g})")
    return value


def safe_exp(log_value: float) -> float:
    """exp that returns inf instead of raising OverflowError."""
    if log_value > LOG_FLOAT_MAX:
        return math.inf
    return math.exp(log_value)


def ratio_margin(log_small: float, log_big: float) -> float:
    """Return 1 - small/big from logarithms, accurate when the ratio is near 1."""
    return float(-np.expm1(log_small - log_big))


def signed_margin(rhs: float, lhs: float) -> float:
    """Relative slack (rhs - lhs) / max(|rhs|, |lhs|); negative means violated."""
    scale = max(abs(rhs), abs(lhs), TINY)
    return (rhs - lhs) / scale


def parallel_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """Map func over items, in order, on up to `threads` worker threads."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
