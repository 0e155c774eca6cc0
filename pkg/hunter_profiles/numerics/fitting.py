"""Least-squares fits of log-periodic tails c·x^(−μ)·sin(ν ln x + d)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import curve_fit

from ..errors import FitUnreliable

# (exponent e, frequencies f): columns x^e·sin(f·φ), x^e·cos(f·φ); f = 0 adds x^e alone.
Correction = Tuple[float, Sequence[int]]

TWO_PI = 2.0 * math.pi


@dataclass(slots=True, frozen=True)
class OscillationFit:
    """Leading amplitude and phase of h(x) ≈ c·sin(ν ln x + d) plus corrections."""

    amplitude: float
    phase: float
    frequency: float
    relative_residual: float
    window: Tuple[float, float]
    samples: int
    coefficients: Tuple[float, ...]


@dataclass(slots=True, frozen=True)
class FreeOscillationFit:
    """Nonlinear fit with the exponent and frequency left free."""

    amplitude: float
    exponent: float
    frequency: float
    phase: float


def wrap_phase(value: float) -> float:
    return float(np.mod(value, TWO_PI))


def phase_distance(a: float, b: float) -> float:
    """Distance between two phases on the circle, in [0, π]."""

    delta = wrap_phase(a - b)
    return min(delta, TWO_PI - delta)


def _design(
    x: np.ndarray, nu: float, corrections: Sequence[Correction]
) -> Tuple[np.ndarray, np.ndarray]:
    log_x = np.log(x)
    phi = nu * log_x
    columns = [np.sin(phi), np.cos(phi)]
    for exponent, frequencies in corrections:
        weight = np.exp(exponent * log_x)
        for f in frequencies:
            if f == 0:
                columns.append(weight)
            else:
                columns.append(weight * np.sin(f * phi))
                columns.append(weight * np.cos(f * phi))
    return np.column_stack(columns), phi


def fit_log_oscillation(
    x: np.ndarray,
    scaled: np.ndarray,
    nu: float,
    *,
    corrections: Sequence[Correction] = (),
    max_relative_residual: float = math.inf,
) -> OscillationFit:
    """Linear least squares for the sin/cos amplitudes at a fixed frequency ν.

    `scaled` is the tail already multiplied by x^μ. The reported residual is the
    RMS misfit divided by the fitted amplitude; above `max_relative_residual`
    the fit raises FitUnreliable.
    """

    x = np.asarray(x, dtype=float)
    scaled = np.asarray(scaled, dtype=float)
    if x.shape != scaled.shape or x.ndim != 1:
        raise ValueError("x and scaled must be one-dimensional arrays of equal length")
    if np.any(x <= 0):
        raise ValueError("log-periodic fits need positive abscissae")
    design, _ = _design(x, nu, corrections)
    if x.size <= design.shape[1]:
        raise ValueError(f"{x.size} samples cannot determine {design.shape[1]} coefficients")

    coeffs, _, _, _ = np.linalg.lstsq(design, scaled, rcond=None)
    sin_coeff, cos_coeff = float(coeffs[0]), float(coeffs[1])
    amplitude = math.hypot(sin_coeff, cos_coeff)
    misfit = scaled - design @ coeffs
    rms = float(np.sqrt(np.mean(misfit**2)))
    relative = rms / amplitude if amplitude > 0 else math.inf

    fit = OscillationFit(
        amplitude=amplitude,
        phase=wrap_phase(math.atan2(cos_coeff, sin_coeff)),
        frequency=nu,
        relative_residual=relative,
        window=(float(x.min()), float(x.max())),
        samples=int(x.size),
        coefficients=tuple(float(c) for c in coeffs),
    )
    if relative > max_relative_residual:
        raise FitUnreliable(
            f"tail fit residual {relative:.3%} exceeds {max_relative_residual:.0%} of the amplitude",
            relative_residual=relative,
        )
    return fit


def leading_component(
    x: np.ndarray, scaled: np.ndarray, fit: OscillationFit, corrections: Sequence[Correction]
) -> np.ndarray:
    """The data with the fitted correction columns removed."""

    design, _ = _design(np.asarray(x, dtype=float), fit.frequency, corrections)
    coeffs = np.asarray(fit.coefficients)
    return np.asarray(scaled, dtype=float) - design[:, 2:] @ coeffs[2:]


def free_oscillation_fit(
    x: np.ndarray,
    scaled: np.ndarray,
    scale_exponent: float,
    fit: OscillationFit,
    *,
    corrections: Sequence[Correction] = (),
) -> FreeOscillationFit:
    """Fit A·x^(−e)·sin(w ln x + d) to the leading component, seeded from `fit`.

    `scaled` carries the factor x^(scale_exponent) used for the linear fit, so
    the returned exponent is e = scale_exponent + the fitted deviation.
    """

    x = np.asarray(x, dtype=float)
    lead = leading_component(x, scaled, fit, corrections)
    log_x = np.log(x)
    pivot = float(np.mean(log_x))

    def model(t: np.ndarray, amplitude: float, drift: float, frequency: float, phase: float) -> np.ndarray:
        return amplitude * np.exp(-drift * (t - pivot)) * np.sin(frequency * (t - pivot) + phase)

    seed = [fit.amplitude, 0.0, fit.frequency, fit.phase + fit.frequency * pivot]
    popt, _ = curve_fit(model, log_x, lead, p0=seed, maxfev=20000)
    amplitude, drift, frequency, pivot_phase = (float(v) for v in popt)
    phase = pivot_phase - frequency * pivot
    if amplitude < 0:
        amplitude, phase = -amplitude, phase + math.pi
    return FreeOscillationFit(
        amplitude=amplitude * math.exp(drift * pivot),
        exponent=scale_exponent + drift,
        frequency=frequency,
        phase=wrap_phase(phase),
    )
