"""Tests for the sonic-point branch and normal-form parameters."""

import math

import pytest

from hunter_profiles.analysis.sonic import (
    BranchLost,
    DegenerateBranch,
    characteristic_params_at_sonic,
    origin_params,
    r_quadratic_residual,
    solve_sonic,
    sonic_branch_scan,
)
from hunter_profiles.core import derive_params, sonic_discriminant
from hunter_profiles.errors import DomainError
from hunter_profiles.models import State


@pytest.mark.parametrize("gamma", [1.05, 1.1, 1.15])
def test_eps_zero_reproduces_the_far_field(gamma: float) -> None:
    p = derive_params(gamma)
    sp = solve_sonic(p, 0.0)
    nf = characteristic_params_at_sonic(p, sp)

    assert sp.omega0 == pytest.approx(2 - gamma, abs=1e-14)
    assert sp.p0 == pytest.approx(p.k, rel=1e-12)
    assert sp.y_star == pytest.approx(p.y_f, rel=1e-12)
    assert sp.R == pytest.approx(-p.density_exponent, abs=1e-10)
    assert sp.W == pytest.approx(0.0, abs=1e-10)
    assert nf.a + nf.b * nf.U == pytest.approx(1 / (2 * (2 - gamma) * p.y_f), rel=1e-10)
    assert nf.kappa == pytest.approx(2.5 * (gamma - 1), abs=1e-10)
    assert not nf.is_resonant


@pytest.mark.parametrize("gamma", [1.05, 1.1, 1.15])
def test_eps_derivatives_at_zero(gamma: float) -> None:
    p = derive_params(gamma)
    h = 1e-4
    plus, minus = solve_sonic(p, h), solve_sonic(p, -h)

    def slope(name: str) -> float:
        return (getattr(plus, name) - getattr(minus, name)) / (2 * h)

    assert slope("omega0") == pytest.approx(-(2 - gamma), rel=1e-5)
    assert slope("p0") == pytest.approx((3 * gamma - 1) * p.k / (2 * (2 - gamma)), rel=1e-5)
    assert slope("y_star") == pytest.approx((3 * gamma**2 - 8 * gamma + 9) * p.y_f / 4, rel=1e-5)
    assert slope("W") == pytest.approx(2 * (7 - 3 * gamma) * (gamma - 1) / (5 * gamma - 3), rel=1e-5)
    assert slope("R") == pytest.approx((-9 * gamma**2 + 9 * gamma + 2) / ((5 * gamma - 3) * (2 - gamma)), rel=1e-5)


@pytest.mark.parametrize("eps", [-0.05, 1e-6, 0.01, 0.1])
def test_sonic_data_is_consistent(eps: float) -> None:
    p = derive_params(1.1)
    sp = solve_sonic(p, eps)
    state = State(rho=sp.rho0, u=sp.u0)

    assert sonic_discriminant(p, sp.y_star, state) == pytest.approx(0.0, abs=1e-12)
    assert sp.rho0 * sp.y_star ** p.density_exponent == pytest.approx(sp.p0, rel=1e-13)
    assert sp.rho1 == pytest.approx(sp.rho0 * sp.R / sp.y_star, rel=1e-13)
    assert sp.w1 == pytest.approx(sp.W / sp.y_star, rel=1e-13)
    assert r_quadratic_residual(p, sp.omega0, sp.R) == pytest.approx(0.0, abs=1e-9)


def test_quadratic_residual_of_selected_root() -> None:
    p = derive_params(1.1)
    nf = characteristic_params_at_sonic(p, solve_sonic(p, 0.02))

    assert nf.quadratic_residual == pytest.approx(0.0, abs=1e-10)


def test_sonic_requires_positive_omega() -> None:
    p = derive_params(1.1)

    with pytest.raises(DomainError):
        solve_sonic(p, -1.0)
    with pytest.raises(DomainError):
        solve_sonic(derive_params(1.0), 0.0)


def test_branch_scan_marks_lost_branch() -> None:
    p = derive_params(1.1)
    rows = sonic_branch_scan(p, [0.0, 0.1, 50.0])

    assert len(rows) == 3
    assert rows[0].admissible
    assert rows[0].y_star == pytest.approx(p.y_f, rel=1e-12)
    lost = [row for row in rows if not row.admissible]
    for row in lost:
        assert math.isnan(row.y_star)
        with pytest.raises((BranchLost, DegenerateBranch, DomainError)):
            characteristic_params_at_sonic(p, solve_sonic(p, row.eps))


def test_origin_normal_form() -> None:
    nf = origin_params(0.3)

    assert nf.U == pytest.approx(-2 / 3)
    assert nf.kappa == pytest.approx(2.0)
    with pytest.raises(DomainError):
        origin_params(0.0)
