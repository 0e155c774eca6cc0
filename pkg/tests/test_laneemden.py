"""Tests for the Lane-Emden interior, u* and the tail constants."""

import math

import numpy as np
import pytest

from hunter_profiles.analysis.laneemden import (
    density_of,
    interior_deviation,
    laneemden_residual,
    pointwise_bounds,
    scale,
    scaled_density,
    solve_laneemden,
    ustar,
    ustar_by_quadrature,
)
from hunter_profiles.core import derive_params
from hunter_profiles.errors import DomainError
from hunter_profiles.models import Profile
from hunter_profiles.numerics.fitting import phase_distance

PARAMS = derive_params(1.1)


@pytest.fixture(scope="module")
def lane_emden():
    return solve_laneemden(PARAMS)


def test_center_normalisation(lane_emden) -> None:
    q, dq = lane_emden.evaluate(0.0)

    assert q[0] == pytest.approx(PARAMS.gamma / (PARAMS.gamma - 1.0), abs=0.0)
    assert dq[0] == 0.0
    assert lane_emden.density(0.0)[0] == pytest.approx(1.0, rel=1e-14)


def test_curvature_at_center(lane_emden) -> None:
    y = np.array([0.01, 0.02, 0.04])
    q, _ = lane_emden.evaluate(y)
    curvature = np.polyfit(y**2, q, 2)[1] * 2.0

    assert curvature == pytest.approx(-4.0 * math.pi / 3.0, rel=1e-6)


def test_equation_residual_is_small(lane_emden) -> None:
    y = np.geomspace(1e-2, 1e12, 60)

    assert np.max(laneemden_residual(PARAMS, lane_emden, y)) < 1e-6


def test_ustar_closed_form_matches_quadrature(lane_emden) -> None:
    for y in (0.5, 3.0, 40.0):
        closed = float(ustar(PARAMS, lane_emden, np.array([y]))[0])
        assert ustar_by_quadrature(PARAMS, lane_emden, y) == pytest.approx(closed, rel=1e-6)
    assert ustar_by_quadrature(PARAMS, lane_emden, 0.0) == 0.0


def test_ustar_slope_at_center(lane_emden) -> None:
    h = 1e-4

    assert float(ustar(PARAMS, lane_emden, np.array([h]))[0]) / h == pytest.approx(-2.0 / 3.0, abs=1e-6)


def test_tail_constants(lane_emden) -> None:
    tail = lane_emden.tail

    assert tail is not None
    assert tail.c2 > 0
    assert 0.0 <= tail.d2 < 2 * math.pi
    assert tail.relative_residual < 0.10
    assert tail.density_exponent == pytest.approx(-PARAMS.density_exponent, rel=0.01)
    assert tail.free is not None
    assert tail.free.frequency == pytest.approx(PARAMS.nu, rel=0.01)
    assert tail.free.exponent == pytest.approx(PARAMS.mu, rel=0.05)
    assert phase_distance(tail.phase_offset, PARAMS.theta0) / (2 * math.pi) < 0.02


def test_tail_window_spans_enough_periods(lane_emden) -> None:
    lo, hi = lane_emden.tail.window

    assert PARAMS.nu * math.log(hi / lo) / (2 * math.pi) > 5


def test_evaluate_outside_domain_raises(lane_emden) -> None:
    with pytest.raises(DomainError):
        lane_emden.evaluate(-1.0)
    with pytest.raises(DomainError):
        lane_emden.evaluate(10 * lane_emden.y_max)


def test_scaling_family(lane_emden) -> None:
    y = np.array([0.3, 2.0, 7.0])
    q1, u1 = scale(lane_emden, 1.0, y)
    q_ref, _ = lane_emden.evaluate(y)

    assert np.allclose(q1, q_ref)
    assert np.allclose(u1, ustar(PARAMS, lane_emden, y))

    lam = 0.25
    gamma = PARAMS.gamma
    q_lam, u_lam = scale(lane_emden, lam, lam * y)
    assert np.allclose(q_lam, lam ** (-2 * (gamma - 1) / (2 - gamma)) * q_ref)
    assert np.allclose(u_lam, lam * ustar(PARAMS, lane_emden, y))
    assert scaled_density(lane_emden, 1.0, 0.0)[0] == pytest.approx(1.0)
    with pytest.raises(DomainError):
        scale(lane_emden, 0.0, y)


def test_scaled_density_matches_density_exponent(lane_emden) -> None:
    lam = 0.1
    gamma = PARAMS.gamma

    assert scaled_density(lane_emden, lam, 0.0)[0] == pytest.approx(lam ** (-2 / (2 - gamma)), rel=1e-12)


def test_pointwise_bounds_are_positive(lane_emden) -> None:
    lower, upper = pointwise_bounds(lane_emden)

    assert 0 < lower <= upper < math.inf


def test_interior_deviation_vanishes_on_scaled_profile(lane_emden) -> None:
    lam = 0.5
    y = np.geomspace(1e-3, 0.4 * PARAMS.y_f, 50)
    rho = scaled_density(lane_emden, lam, y)
    zeros = np.zeros_like(y)
    profile = Profile(params=PARAMS, y=y, rho=rho, u=zeros, drho=zeros, du=zeros)

    assert interior_deviation(PARAMS, lane_emden, profile, lam) == pytest.approx(0.0, abs=1e-12)
    assert interior_deviation(PARAMS, lane_emden, profile, 0.6) > 1e-3


def test_invalid_requests() -> None:
    with pytest.raises(DomainError):
        solve_laneemden(PARAMS, 10.0)
    with pytest.raises(DomainError):
        solve_laneemden(derive_params(1.0))
    assert density_of(PARAMS, np.array([-1.0]))[0] == 0.0
