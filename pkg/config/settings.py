"""Tolerance configuration and environment-backed settings."""

import os
from typing import NamedTuple
from dotenv import load_dotenv

load_dotenv()


class SeriesConfig(NamedTuple):
    """Truncation controls for the spectral and image series."""
    tol_series: float = 1e-15
    n_max: int = 10000
    t_min: float = 1e-3  # small-time floor for the sphere Legendre series


class ToleranceConfig(NamedTuple):
    """Relative tolerances shared by every numerical component."""
    rel_tol: float = 1e-9       # inequality slack
    series_tol: float = 1e-15
    quad_tol: float = 1e-8
    fd_step: float = 1e-5       # relative finite-difference step
    volume_step: float = 1e-6   # relative step for numerical sphere areas
    series_max_terms: int = 10000
    sphere_t_min: float = 1e-3

    def series(self) -> SeriesConfig:
        """Return the series view of these tolerances."""
        return SeriesConfig(
            tol_series=self.series_tol,
            n_max=self.series_max_terms,
            t_min=self.sphere_t_min,
        )


DEFAULT_TOLERANCES = ToleranceConfig()


class Settings:
    """Reads tolerances and the parallelism cap from the environment."""

    def __init__(self):
        self.rel_tol = float(os.getenv('HEATBOUND_REL_TOL', '1e-9'))
        self.series_tol = float(os.getenv('HEATBOUND_SERIES_TOL', '1e-15'))
        self.quad_tol = float(os.getenv('HEATBOUND_QUAD_TOL', '1e-8'))
        self.series_max_terms = int(os.getenv('HEATBOUND_SERIES_MAX_TERMS', '10000'))
        self.sphere_t_min = float(os.getenv('HEATBOUND_SPHERE_T_MIN', '1e-3'))
        self.threads = max(1, int(os.getenv('HEATBOUND_THREADS', '1')))

        if self.series_tol <= 0 or self.rel_tol < 0 or self.quad_tol <= 0:
            raise ValueError("Tolerances must be positive")
        if self.series_max_terms < 8:
            raise ValueError("HEATBOUND_SERIES_MAX_TERMS must be at least 8")

    def tolerances(self) -> ToleranceConfig:
        """Build the immutable tolerance record for this environment."""
        return ToleranceConfig(
            rel_tol=self.rel_tol,
            series_tol=self.series_tol,
            quad_tol=self.quad_tol,
            series_max_terms=self.series_max_terms,
            sphere_t_min=self.sphere_t_min,
        )
