"""Tests for the gamma-derived constants and explicit solutions."""

import math

import numpy as np
import pytest

from hunter_profiles.core import (
    derive_params,
    explicit_derivative,
    explicit_profile,
    explicit_solution,
    friedman_sonic_point,
    require_strict,
    residue_matrix,
    residual,
)
from hunter_profiles.errors import DomainError
from hunter_profiles.models import ExplicitKind


@pytest.mark.parametrize("gamma", np.linspace(1.0, 1.2, 21)[1:-1])
def test_constant_identities_hold(gamma: float) -> None:
    p = derive_params(float(gamma))
    m = p.density_exponent

    assert p.k * p.y_f ** (-m) == pytest.approx((4 - 3 * gamma) / (2 * math.pi), abs=1e-12)
    lhs = gamma * p.k ** (gamma - 2)
    assert lhs == pytest.approx((2 - gamma) ** 2 * p.y_f**m / p.k, rel=1e-12)
    assert math.sin(p.theta0) == pytest.approx(-p.nu * math.sqrt(2 - gamma) / 2, abs=1e-12)
    assert math.pi < p.theta0 < 1.5 * math.pi


def test_isothermal_endpoint_values() -> None:
    p = derive_params(1.0)

    assert p.mu == pytest.approx(0.5, abs=1e-14)
    assert p.nu == pytest.approx(math.sqrt(7.0) / 2.0, abs=1e-14)
    assert p.k == pytest.approx(1.0 / (2.0 * math.pi))
    with pytest.raises(DomainError):
        require_strict(p)


@pytest.mark.parametrize("gamma", [0.99, 1.2, 1.3, float("nan")])
def test_derive_params_rejects_out_of_range(gamma: float) -> None:
    with pytest.raises(DomainError):
        derive_params(gamma)


def test_reference_values_for_gamma_1_1() -> None:
    p = derive_params(1.1)

    assert p.nu == pytest.approx(1.2158, abs=1e-3)
    assert p.mu == pytest.approx(0.2778, abs=1e-3)


@pytest.mark.parametrize("gamma", [1.0, 1.05, 1.1, 1.15, 1.19])
def test_residue_matrix_eigenvalues(gamma: float) -> None:
    p = derive_params(gamma)
    _, eigenvalues = residue_matrix(p)

    assert eigenvalues[0] == pytest.approx(complex(-p.mu, -p.nu), abs=1e-10)
    assert eigenvalues[1] == pytest.approx(complex(-p.mu, p.nu), abs=1e-10)


@pytest.mark.parametrize("kind", list(ExplicitKind))
def test_explicit_solutions_satisfy_the_system(kind: ExplicitKind) -> None:
    p = derive_params(1.1)
    for y in np.linspace(0.05, 5.0, 25):
        state = explicit_solution(p, kind, float(y))
        slope = explicit_derivative(p, kind, float(y))
        r = residual(p, float(y), state, slope)
        assert math.hypot(*r) < 1e-10


def test_far_field_is_singular_at_origin() -> None:
    p = derive_params(1.1)

    with pytest.raises(DomainError):
        explicit_solution(p, ExplicitKind.FAR_FIELD, 0.0)
    assert explicit_solution(p, ExplicitKind.FRIEDMAN, 0.0).u == 0.0


def test_friedman_sonic_point_lies_on_the_sonic_locus() -> None:
    p = derive_params(1.1)
    y0 = friedman_sonic_point(p)
    state = explicit_solution(p, ExplicitKind.FRIEDMAN, y0)
    v = state.u + (2 - p.gamma) * y0

    assert 0.5 < y0 < 5.0
    assert v * v == pytest.approx(p.gamma * state.rho ** (p.gamma - 1), rel=1e-12)


def test_explicit_profile_samples_far_field() -> None:
    p = derive_params(1.1)
    profile = explicit_profile(p, ExplicitKind.FAR_FIELD, np.geomspace(0.1, 10.0, 5))

    assert np.allclose(profile.p(), p.k)
    assert np.allclose(profile.w(), 2 - p.gamma)
