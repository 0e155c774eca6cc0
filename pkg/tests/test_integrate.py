"""Tests for the adaptive integrator wrapper."""

import math

import numpy as np
import pytest

from hunter_profiles.core import derive_params, sonic_discriminant, to_log
from hunter_profiles.core.params import friedman_sonic_point
from hunter_profiles.models import PWState, State
from hunter_profiles.numerics import EventKind, IntegrationResult, RhsKind, detect_sonic, integrate

PARAMS = derive_params(1.1)


def test_exponential_decay_in_log_variable() -> None:
    result = integrate(None, lambda y, x: -x / y, 1.0, [1.0], 100.0, 1e-10, log_y=True, watch_density=False)

    assert result.y_end == pytest.approx(100.0)
    assert result.final[0] == pytest.approx(0.01, rel=1e-8)
    assert result.state_at(10.0)[0] == pytest.approx(0.1, rel=1e-7)
    assert result.halted_by is None


def test_friedman_trajectory_is_preserved() -> None:
    start = State(rho=1.0 / (6.0 * math.pi), u=-0.2)
    result = integrate(PARAMS, RhsKind.RHO_U, 0.3, start, 0.05, 1e-10)

    assert result.final[0] == pytest.approx(1.0 / (6.0 * math.pi), rel=1e-8)
    assert result.final[1] == pytest.approx(-2.0 / 3.0 * 0.05, rel=1e-8)


def test_friedman_crossing_is_detected() -> None:
    y0 = friedman_sonic_point(PARAMS)
    ys = np.geomspace(0.5, 5.0, 40)
    states = [[1.0 / (6.0 * math.pi), -2.0 / 3.0 * y] for y in ys]
    samples = IntegrationResult.from_samples(ys, states)

    assert detect_sonic(PARAMS, samples) == pytest.approx(y0, rel=1e-9)
    assert detect_sonic(PARAMS, IntegrationResult.from_samples(ys[:5], states[:5])) is None


def test_far_field_in_pw_form_stays_put() -> None:
    start = PWState(p=PARAMS.k, w=2 - PARAMS.gamma)
    result = integrate(PARAMS, RhsKind.PW, 2.0, start, 50.0, 1e-10, log_y=True)

    assert result.final.tolist() == pytest.approx([PARAMS.k, 2 - PARAMS.gamma], rel=1e-10)
    assert result.kind is RhsKind.PW


def test_density_floor_halts_integration() -> None:
    result = integrate(None, lambda y, x: np.array([-1.0]), 0.0, [1.0], 5.0, 1e-9)

    assert result.halted_by is EventKind.DENSITY_FLOOR
    assert result.y_end == pytest.approx(1.0, rel=1e-6)


def test_overflow_guard_halts_integration() -> None:
    result = integrate(
        None, lambda y, x: x * x, 0.0, [1.0], 2.0, 1e-9, watch_density=False, overflow_guard=1e6
    )

    assert result.halted_by is EventKind.BLOWUP
    assert result.y_end < 1.0


def test_validation_and_from_samples() -> None:
    with pytest.raises(ValueError):
        integrate(None, lambda y, x: x, 1.0, [1.0], 2.0, 0.0)
    with pytest.raises(ValueError):
        integrate(None, RhsKind.RHO_U, 1.0, [1.0, 0.0], 2.0, 1e-8)

    wrapped = IntegrationResult.from_samples([0.0, 1.0, 2.0, 3.0], [[0.0], [1.0], [4.0], [9.0]])
    assert wrapped.state_at(1.5)[0] == pytest.approx(2.25, rel=0.05)


def test_friedman_in_log_variables() -> None:
    start = np.array([-math.log(6.0 * math.pi), -2.0 / 3.0])
    result = integrate(PARAMS, RhsKind.LOG, 0.3, start, 0.01, 1e-10, log_y=True)

    assert result.kind is RhsKind.LOG
    assert result.final.tolist() == pytest.approx(start.tolist(), rel=1e-8)


@pytest.mark.parametrize("kind", [RhsKind.RHO_U, RhsKind.LOG])
def test_inward_then_outward_returns_to_start(kind: RhsKind) -> None:
    state = State(rho=1.01 / (6.0 * math.pi), u=-2.0 / 3.0)
    x0 = to_log(1.0, state) if kind is RhsKind.LOG else state.as_array()
    inward = integrate(PARAMS, kind, 1.0, x0, 0.5, 1e-10, log_y=True)
    back = integrate(PARAMS, kind, 0.5, inward.final, 1.0, 1e-10, log_y=True)

    assert inward.halted_by is None and back.halted_by is None
    assert np.allclose(back.final, x0, rtol=1e-7, atol=1e-9)


def test_global_error_is_of_the_order_of_tol() -> None:
    exact = math.exp(math.sin(10.0))
    errors = []
    for tol in (1e-6, 1e-8, 1e-10):
        result = integrate(None, lambda y, x: np.cos(y) * x, 0.0, [1.0], 10.0, tol, watch_density=False)
        errors.append(abs(result.final[0] - exact))
        assert errors[-1] < 1e3 * tol * exact

    assert errors[0] > errors[1] > errors[2]


def test_stop_condition_halts_integration() -> None:
    result = integrate(
        None,
        lambda y, x: np.array([-1.0]),
        0.0,
        [2.0],
        5.0,
        1e-9,
        watch_density=False,
        stop_when=lambda y, x: x[0] - 0.5,
    )

    assert result.halted_by is EventKind.STOP_CONDITION
    assert result.y_end == pytest.approx(1.5, rel=1e-9)


def test_sonic_tolerance_sets_the_halting_band() -> None:
    start = State(rho=1.0 / (6.0 * math.pi), u=-2.0 / 3.0 * 0.5)
    result = integrate(PARAMS, RhsKind.RHO_U, 0.5, start, 5.0, 1e-10, stop_at_sonic=True, tol_sonic=1e-3)
    d = sonic_discriminant(PARAMS, result.y_end, State(rho=result.final[0], u=result.final[1]))

    assert result.halted_by is EventKind.SONIC_CROSSING
    assert result.y_end < friedman_sonic_point(PARAMS)
    assert d == pytest.approx(-2e-3, rel=1e-6)


def test_double_touch_inside_one_step_is_detected() -> None:
    rho = 1.0 / (6.0 * math.pi)
    sound = math.sqrt(PARAMS.gamma * rho ** (PARAMS.gamma - 1.0))

    def dense(y):
        y = np.asarray(y, dtype=float)
        u = -(2.0 - PARAMS.gamma) * y + sound * np.sqrt(0.99 + (y - 1.0) ** 2)
        return np.array([np.full_like(y, rho), u])

    ys = [0.5, 2.0]
    samples = IntegrationResult.from_samples(ys, [dense(y) for y in ys], dense=dense)

    assert detect_sonic(PARAMS, samples) == pytest.approx(0.9, rel=1e-9)
