"""Homogeneous solution of the exterior linearisation about the far field."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from ..core.params import require_strict
from ..errors import DomainError, HunterProfilesError
from ..models import GammaParams
from ..numerics.fitting import (
    Correction,
    FreeOscillationFit,
    fit_log_oscillation,
    free_oscillation_fit,
    wrap_phase,
)
from ..numerics.integrate import IntegrationResult, integrate

SERIES_RTOL = 1e-16
SERIES_MAX_TERMS = 100_000
XI_WINDOW = 0.9
XI_LAUNCH = -0.8
Z_LO_FACTOR = 1e-8
FIT_HI_FACTOR = 0.3
SAMPLES_PER_DECADE = 40
MAX_FIT_RESIDUAL = 0.05
DEFAULT_TOL = 1e-11


class ConvergenceFailure(HunterProfilesError):
    """Raised when the hypergeometric series does not settle within the term cap."""


class OutsideWindow(HunterProfilesError):
    """Raised when the homogeneous solution is requested with |ξ| ≥ 0.9."""


@dataclass(slots=True, frozen=True)
class HypergeometricArgs:
    """₂F₁(a, ā; c; z) with a = a_re + i·a_im."""

    a_re: float
    a_im: float
    c: float
    z: float

    def __post_init__(self) -> None:
        if self.c <= 0 and float(self.c).is_integer():
            raise DomainError(f"c={self.c!r} is a non-positive integer")
        if abs(self.z) >= 1.0:
            raise DomainError(f"|z|={abs(self.z)!r} outside the disc of convergence")

    def shifted(self, n: int) -> "HypergeometricArgs":
        """Parameters (a+n, ā+n; c+n) at the same argument."""

        return HypergeometricArgs(a_re=self.a_re + n, a_im=self.a_im, c=self.c + n, z=self.z)


def gauss_2f1_conjugate(args: HypergeometricArgs) -> float:
    """Real partial sums of ₂F₁ for a complex-conjugate pair of upper parameters."""

    total = 1.0
    term = 1.0
    n = 0
    while n < SERIES_MAX_TERMS:
        term *= ((n + args.a_re) ** 2 + args.a_im**2) / ((args.c + n) * (1.0 + n)) * args.z
        total += term
        n += 1
        if abs(term) < SERIES_RTOL * abs(total):
            return total
    raise ConvergenceFailure(f"2F1 series not converged after {n} terms at z={args.z!r}")


def _upper_modulus(args: HypergeometricArgs) -> float:
    return args.a_re**2 + args.a_im**2


@dataclass(slots=True, frozen=True)
class HomConstants:
    """Asymptotic constants of the homogeneous solution as z → 0."""

    c1: float
    d1: float
    omega_amplitude: float
    omega_phase: float
    relative_residual: float
    window: Tuple[float, float]
    free: Optional[FreeOscillationFit] = None

    @property
    def phase_offset(self) -> float:
        return wrap_phase(self.omega_phase - self.d1)


@dataclass(slots=True, frozen=True)
class HomSolution:
    """Evaluator of (p_hom, ω_hom) on the window |ξ| < 0.9 around y_f."""

    params: GammaParams
    a_re: float
    a_im: float
    c: float
    z_window: Tuple[float, float]
    constants: Optional[HomConstants] = None

    def xi(self, z: float) -> float:
        return 1.0 - (self.params.y_f / z) ** self.params.density_exponent

    def _hyper(self, xi: float, shift: int) -> float:
        return gauss_2f1_conjugate(HypergeometricArgs(self.a_re, self.a_im, self.c, xi).shifted(shift))

    def evaluate(self, z: float) -> Tuple[float, float, float, float]:
        """(p_hom, ω_hom, p_hom′, ω_hom′) at z."""

        if z <= 0:
            raise OutsideWindow(f"z={z!r} must be positive")
        xi = self.xi(z)
        if abs(xi) >= XI_WINDOW:
            raise OutsideWindow(f"|xi|={abs(xi):.3f} at z={z:.6g} is outside the series window")

        params = self.params
        gamma, k = params.gamma, params.k
        two_minus = 2.0 - gamma
        base = HypergeometricArgs(self.a_re, self.a_im, self.c, xi)
        first_factor = _upper_modulus(base) / base.c
        second_factor = first_factor * _upper_modulus(base.shifted(1)) / (base.c + 1.0)
        f0 = self._hyper(xi, 0)
        f1 = first_factor * self._hyper(xi, 1)
        f2 = second_factor * self._hyper(xi, 2)

        amplitude = k * (3.0 * gamma - 1.0) / (2.0 * two_minus)
        coupling = 3.0 * k * (gamma - 1.0) / (two_minus * (4.0 - 3.0 * gamma))
        p = amplitude * f0 - coupling * xi * f1
        w = -two_minus * f0 + xi * f1 / (4.0 - 3.0 * gamma)

        dxi = params.density_exponent * (1.0 - xi) / z
        dp = dxi * (amplitude * f1 - coupling * (f1 + xi * f2))
        dw = dxi * (-two_minus * f1 + (f1 + xi * f2) / (4.0 - 3.0 * gamma))
        return p, w, dp, dw


def hom_solution(params: GammaParams, *, constants: bool = False, tol: float = DEFAULT_TOL) -> HomSolution:
    """Build the homogeneous solution; with `constants` also fit (c1, d1)."""

    require_strict(params)
    gamma = params.gamma
    two_minus = 2.0 - gamma
    m = params.density_exponent
    hom = HomSolution(
        params=params,
        a_re=-0.5 * two_minus * params.mu,
        a_im=-0.5 * two_minus * params.nu,
        c=0.5 * (5.0 * gamma - 3.0),
        z_window=(
            params.y_f * (1.0 + XI_WINDOW) ** (-1.0 / m),
            params.y_f * (1.0 - XI_WINDOW) ** (-1.0 / m),
        ),
    )
    if constants:
        hom = replace(hom, constants=extract_c1_d1(params, hom, tol=tol))
    return hom


def linear_matrices(params: GammaParams, z: float) -> Tuple[np.ndarray, np.ndarray]:
    """E and F of the linearised exterior system E·X′ + F·X = 0, X = (p, ω)."""

    gamma, k = params.gamma, params.k
    two_minus = 2.0 - gamma
    lead = 4.0 - 3.0 * gamma
    inverse_power = z ** (-params.density_exponent)
    E = np.array(
        [
            [two_minus * z, k * z],
            [2.0 * math.pi * two_minus**2 / lead * z * inverse_power, two_minus * z],
        ]
    )
    F = np.array(
        [
            [0.0, lead * k / two_minus],
            [
                4.0 * math.pi * two_minus**2 / lead * inverse_power,
                1.0 + 4.0 * math.pi * k / lead * inverse_power,
            ],
        ]
    )
    return E, F


def linear_residual(
    params: GammaParams, z: float, values: Tuple[float, float], derivatives: Tuple[float, float]
) -> float:
    """|E·X′ + F·X| relative to |E·X′| + |F·X|."""

    E, F = linear_matrices(params, z)
    x = np.asarray(values, dtype=float)
    dx = np.asarray(derivatives, dtype=float)
    transport = E @ dx
    source = F @ x
    scale = np.linalg.norm(transport) + np.linalg.norm(source)
    return float(np.linalg.norm(transport + source) / scale) if scale > 0 else 0.0


def _linear_field(params: GammaParams):
    def field(z: float, x: np.ndarray) -> np.ndarray:
        E, F = linear_matrices(params, z)
        return -np.linalg.solve(E, F @ x)

    return field


def extend_inward(
    params: GammaParams, hom: HomSolution, *, z_lo: Optional[float] = None, tol: float = DEFAULT_TOL
) -> IntegrationResult:
    """Continue the homogeneous solution from ξ = −0.8 toward the origin."""

    z_start = params.y_f * (1.0 - XI_LAUNCH) ** (-1.0 / params.density_exponent)
    z_end = Z_LO_FACTOR * params.y_f if z_lo is None else z_lo
    p, w, _, _ = hom.evaluate(z_start)
    return integrate(
        None,
        _linear_field(params),
        z_start,
        [p, w],
        z_end,
        tol,
        log_y=True,
        watch_density=False,
    )


def homogeneous_corrections(params: GammaParams) -> Tuple[Correction, ...]:
    m = params.density_exponent
    return ((m, (1,)), (2.0 * m, (1,)))


def extract_c1_d1(
    params: GammaParams,
    hom: HomSolution,
    extension: Optional[IntegrationResult] = None,
    *,
    tol: float = DEFAULT_TOL,
) -> HomConstants:
    """Fit z^μ·p_hom ≈ c1·sin(ν ln z + d1) and the ω_hom phase on [z_lo, 0.3·y_f]."""

    if extension is None:
        extension = extend_inward(params, hom, tol=tol)
    z_lo = float(np.min(extension.y))
    z_hi = FIT_HI_FACTOR * params.y_f
    count = max(int(math.ceil(math.log10(z_hi / z_lo) * SAMPLES_PER_DECADE)), 16)
    grid = np.geomspace(z_lo, z_hi, count)
    values = np.asarray(extension.state_at(grid), dtype=float)
    weight = grid**params.mu
    corrections = homogeneous_corrections(params)

    p_fit = fit_log_oscillation(
        grid, weight * values[0], params.nu, corrections=corrections, max_relative_residual=MAX_FIT_RESIDUAL
    )
    w_fit = fit_log_oscillation(
        grid, weight * values[1], params.nu, corrections=corrections, max_relative_residual=MAX_FIT_RESIDUAL
    )
    try:
        free = free_oscillation_fit(grid, weight * values[0], params.mu, p_fit, corrections=corrections)
    except RuntimeError:
        free = None

    return HomConstants(
        c1=p_fit.amplitude,
        d1=p_fit.phase,
        omega_amplitude=w_fit.amplitude,
        omega_phase=w_fit.phase,
        relative_residual=max(p_fit.relative_residual, w_fit.relative_residual),
        window=(z_lo, z_hi),
        free=free,
    )


def window_samples(hom: HomSolution, count: int = 40) -> np.ndarray:
    """Evenly spaced z inside the series window, endpoints excluded."""

    lo, hi = hom.z_window
    return np.linspace(lo, hi, count + 2)[1:-1]
