import math

from pytest import approx, raises

from core.errors import DomainError
from core.kernels import circle_kernel_spectral
from core.pde_oracle import CrankNicolsonCircle, pde_oracle_circle

TWO_PI = 2 * math.pi


def test_oracle_agrees_with_spectral_kernel():
    solver = CrankNicolsonCircle(TWO_PI)
    for t in (1.0, 5.0):
        solver.march_to(t)
        peak = circle_kernel_spectral(TWO_PI, 0.0, t)
        for d in (0.0, 1.0, math.pi):
            assert abs(solver.value_at(d) - circle_kernel_spectral(TWO_PI, d, t)) <= 1e-5 * peak


def test_mass_is_conserved():
    solver = CrankNicolsonCircle(TWO_PI, nodes=512)
    solver.march_to(2.0)
    assert max(solver.mass_history) - min(solver.mass_history) <= 1e-10
    assert solver.mass() == approx(1.0, abs=1e-8)


def test_one_shot_oracle():
    assert pde_oracle_circle(TWO_PI, 1.0, 1.0) == approx(
        circle_kernel_spectral(TWO_PI, 1.0, 1.0), abs=1e-5)


def test_oracle_rejects_times_before_bootstrap():
    with raises(DomainError):
        pde_oracle_circle(TWO_PI, 0.0, 1e-5)
    solver = CrankNicolsonCircle(TWO_PI, nodes=64)
    solver.march_to(0.5)
    with raises(DomainError):
        solver.march_to(0.1)


def test_too_coarse_grid():
    with raises(DomainError):
        CrankNicolsonCircle(TWO_PI, nodes=8)


def test_long_time_equilibrium_is_uniform():
    solver = CrankNicolsonCircle(TWO_PI, nodes=512)
    solver.march_to(50.0)
    for d in (0.0, 1.0, math.pi):
        assert solver.value_at(d) == approx(1.0 / TWO_PI, rel=1e-6)
    assert pde_oracle_circle(TWO_PI, 2.0, 50.0, nodes=256) == approx(1.0 / TWO_PI, rel=1e-6)
