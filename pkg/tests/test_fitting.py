"""Tests for the log-periodic tail fits."""

import math

import numpy as np
import pytest

from hunter_profiles.errors import FitUnreliable
from hunter_profiles.numerics import fit_log_oscillation, free_oscillation_fit
from hunter_profiles.numerics.fitting import leading_component, phase_distance, wrap_phase

NU = 1.2158
MU = 0.2778


def _tail(x: np.ndarray, amplitude: float, phase: float) -> np.ndarray:
    return amplitude * x ** (-MU) * np.sin(NU * np.log(x) + phase)


def test_fixed_frequency_fit_recovers_amplitude_and_phase() -> None:
    x = np.geomspace(1e2, 1e8, 300)
    fit = fit_log_oscillation(x, x**MU * _tail(x, 0.37, 4.0), NU)

    assert fit.amplitude == pytest.approx(0.37, rel=1e-10)
    assert fit.phase == pytest.approx(4.0, abs=1e-10)
    assert fit.relative_residual < 1e-10
    assert fit.window == pytest.approx((1e2, 1e8))


def test_correction_columns_absorb_second_harmonic() -> None:
    x = np.geomspace(1e3, 1e9, 400)
    phi = NU * np.log(x)
    scaled = 0.5 * np.sin(phi + 1.0) + x ** (-MU) * (0.2 + 0.1 * np.sin(2 * phi) - 0.3 * np.cos(2 * phi))
    fit = fit_log_oscillation(x, scaled, NU, corrections=((-MU, (0, 2)),))

    assert fit.amplitude == pytest.approx(0.5, rel=1e-9)
    assert fit.phase == pytest.approx(1.0, abs=1e-9)
    assert len(fit.coefficients) == 2 + 1 + 2
    assert np.allclose(leading_component(x, scaled, fit, ((-MU, (0, 2)),)), 0.5 * np.sin(phi + 1.0), atol=1e-9)


def test_noisy_fit_is_rejected_above_threshold() -> None:
    rng = np.random.default_rng(7)
    x = np.geomspace(1e2, 1e6, 200)
    scaled = 0.01 * np.sin(NU * np.log(x)) + rng.normal(scale=0.05, size=x.size)

    with pytest.raises(FitUnreliable) as info:
        fit_log_oscillation(x, scaled, NU, max_relative_residual=0.1)
    assert info.value.relative_residual > 0.1


def test_fit_input_validation() -> None:
    with pytest.raises(ValueError):
        fit_log_oscillation(np.array([-1.0, 2.0, 3.0]), np.zeros(3), NU)
    with pytest.raises(ValueError):
        fit_log_oscillation(np.array([1.0, 2.0]), np.zeros(2), NU)


def test_free_fit_recovers_exponent_and_frequency() -> None:
    x = np.geomspace(1e2, 1e10, 400)
    scaled = x**MU * _tail(x, 0.8, 2.5) * x ** (-0.05)
    fit = fit_log_oscillation(x, scaled, NU)
    free = free_oscillation_fit(x, scaled, MU, fit)

    assert free.exponent == pytest.approx(MU + 0.05, abs=1e-6)
    assert free.frequency == pytest.approx(NU, rel=1e-6)
    assert free.amplitude == pytest.approx(0.8, rel=1e-5)
    assert phase_distance(free.phase, 2.5) < 1e-5


def test_phase_helpers_wrap_to_circle() -> None:
    assert wrap_phase(-0.5) == pytest.approx(2 * math.pi - 0.5)
    assert phase_distance(0.1, 2 * math.pi - 0.1) == pytest.approx(0.2)
    assert phase_distance(0.0, math.pi) == pytest.approx(math.pi)
