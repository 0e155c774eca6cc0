"""Tests for the self-similar right-hand sides and variable transforms."""

import math

import numpy as np
import pytest

from hunter_profiles.core import (
    OriginSingular,
    SonicSingular,
    derive_params,
    enthalpy_rhs,
    explicit_derivative,
    explicit_solution,
    from_enthalpy,
    from_pw,
    residual,
    rho_u_field,
    rhs_pw,
    rhs_rho_u,
    sonic_discriminant,
    to_enthalpy,
    to_pw,
)
from hunter_profiles.models import ExplicitKind, PWState, State

PARAMS = derive_params(1.1)


def test_rhs_solves_the_linear_system() -> None:
    state = State(rho=0.2, u=-0.1)
    y = 0.3
    ds = rhs_rho_u(PARAMS, y, state)

    r = residual(PARAMS, y, state, ds)
    assert math.hypot(*r) < 1e-12
    assert np.allclose(rho_u_field(PARAMS)(y, state.as_array()), ds)


def test_rhs_reproduces_explicit_derivatives() -> None:
    for kind in ExplicitKind:
        y = 0.7
        state = explicit_solution(PARAMS, kind, y)
        expected = explicit_derivative(PARAMS, kind, y)
        assert rhs_rho_u(PARAMS, y, state) == pytest.approx(expected, rel=1e-10, abs=1e-12)


def test_rhs_rejects_origin_and_sonic_points() -> None:
    with pytest.raises(OriginSingular):
        rhs_rho_u(PARAMS, 0.0, State(rho=1.0, u=0.0))

    y = PARAMS.y_f
    on_locus = explicit_solution(PARAMS, ExplicitKind.FAR_FIELD, y)
    assert abs(sonic_discriminant(PARAMS, y, on_locus)) < 1e-12
    with pytest.raises(SonicSingular):
        rhs_rho_u(PARAMS, y, on_locus)


def test_pw_transform_is_invertible_and_consistent() -> None:
    state = State(rho=0.05, u=-0.4)
    z = 1.7
    pw = to_pw(PARAMS, z, state)
    back = from_pw(PARAMS, z, pw)

    assert back.rho == pytest.approx(state.rho, rel=1e-14)
    assert back.u == pytest.approx(state.u, rel=1e-14)

    drho, du = rhs_rho_u(PARAMS, z, state)
    dp, dw = rhs_pw(PARAMS, z, pw)
    m = PARAMS.density_exponent
    assert dp == pytest.approx(m * z ** (m - 1) * state.rho + z**m * drho, rel=1e-10)
    assert dw == pytest.approx(du / z - state.u / z**2, rel=1e-10)


def test_far_field_is_a_fixed_point_in_pw_form() -> None:
    z = 3.0
    dp, dw = rhs_pw(PARAMS, z, PWState(p=PARAMS.k, w=2 - PARAMS.gamma))

    assert dp == pytest.approx(0.0, abs=1e-12)
    assert dw == pytest.approx(0.0, abs=1e-12)


def test_enthalpy_form_matches_rho_u_form() -> None:
    state = State(rho=0.1, u=-0.2)
    y = 0.4
    h = to_enthalpy(PARAMS, state)
    back = from_enthalpy(PARAMS, h)
    dh, du = enthalpy_rhs(PARAMS, y, h)
    drho, du_direct = rhs_rho_u(PARAMS, y, state)

    assert back.rho == pytest.approx(state.rho, rel=1e-12)
    assert dh == pytest.approx(PARAMS.gamma * state.rho ** (PARAMS.gamma - 2) * drho, rel=1e-10)
    assert du == pytest.approx(du_direct, rel=1e-12)
