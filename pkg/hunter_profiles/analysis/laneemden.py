"""Lane-Emden profile Q, the universal velocity u* and their oscillatory tails."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.optimize import minimize_scalar

from ..core.params import require_strict
from ..errors import DomainError, HunterProfilesError
from ..models import GammaParams, Profile
from ..numerics.fitting import (
    Correction,
    FreeOscillationFit,
    OscillationFit,
    fit_log_oscillation,
    free_oscillation_fit,
    wrap_phase,
)
from ..numerics.integrate import integrate

SERIES_SWITCH = 1e-3
DEFAULT_YMAX = 1e17
DEFAULT_TOL = 1e-11
TAIL_WINDOW_LO = 1e4
DECAY_WINDOW_LO = 1e2
SAMPLES_PER_DECADE = 40
MAX_TAIL_RESIDUAL = 0.10
Q_FLOOR = 1e-300


class PositivityViolation(HunterProfilesError):
    """Raised when the Lane-Emden enthalpy Q reaches zero on the computed domain."""


@dataclass(slots=True, frozen=True)
class TailFit:
    """Tail constants (c2, d2) of y^(2/(2−γ))·ρ_Q − k and the matching u* tail."""

    c2: float
    d2: float
    relative_residual: float
    window: Tuple[float, float]
    samples: int
    density_exponent: float
    ustar_amplitude: float
    ustar_phase: float
    free: Optional[FreeOscillationFit] = None

    @property
    def phase_offset(self) -> float:
        """Phase of the u* tail minus d2, wrapped to [0, 2π)."""

        return wrap_phase(self.ustar_phase - self.d2)


@dataclass(slots=True, frozen=True)
class LaneEmdenSolution:
    """Q and Q′ on [0, y_max] with the dense interpolant of the log-y integration."""

    params: GammaParams
    y: np.ndarray
    Q: np.ndarray
    dQ: np.ndarray
    y_max: float
    dense: Callable[[np.ndarray], np.ndarray]
    tail: Optional[TailFit] = None

    @property
    def q_center(self) -> float:
        return self.params.gamma / (self.params.gamma - 1.0)

    def evaluate(self, y: np.ndarray | float) -> Tuple[np.ndarray, np.ndarray]:
        """(Q, Q′) at y; the center series is used below the switch point."""

        y_arr = np.atleast_1d(np.asarray(y, dtype=float))
        if np.any(y_arr < 0) or np.any(y_arr > self.y_max * (1.0 + 1e-12)):
            raise DomainError(f"Lane-Emden profile is computed on [0, {self.y_max:.3e}]")
        q = np.empty_like(y_arr)
        dq = np.empty_like(y_arr)
        inner = y_arr < SERIES_SWITCH
        if np.any(inner):
            q[inner], dq[inner] = _center_series(self.params.gamma, y_arr[inner])
        if np.any(~inner):
            outer = y_arr[~inner]
            values = np.asarray(self.dense(outer), dtype=float)
            q[~inner] = values[0]
            dq[~inner] = values[1] / outer
        return q, dq

    def density(self, y: np.ndarray | float) -> np.ndarray:
        q, _ = self.evaluate(y)
        return density_of(self.params, q)


def density_of(params: GammaParams, q: np.ndarray) -> np.ndarray:
    """ρ_Q = ((γ−1)Q/γ)^(1/(γ−1))."""

    gamma = params.gamma
    return (np.maximum((gamma - 1.0) * np.asarray(q) / gamma, 0.0)) ** (1.0 / (gamma - 1.0))


def _center_series(gamma: float, y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    q0 = gamma / (gamma - 1.0)
    a2 = -2.0 * math.pi / 3.0
    a4 = 2.0 * math.pi**2 / (15.0 * gamma)
    return q0 + a2 * y**2 + a4 * y**4, 2.0 * a2 * y + 4.0 * a4 * y**3


def _log_field(params: GammaParams) -> Callable[[float, np.ndarray], np.ndarray]:
    # x = (Q, P) with P = yQ′; returns d/dy so the integrator can rescale to d/d(ln y)
    def field(y: float, x: np.ndarray) -> np.ndarray:
        q, p = x
        rho = density_of(params, max(q, 0.0))
        return np.array([p / y, (-p - 4.0 * math.pi * y * y * rho) / y])

    return field


def solve_laneemden(
    params: GammaParams,
    y_max: float = DEFAULT_YMAX,
    tol: float = DEFAULT_TOL,
    *,
    fit: bool = True,
) -> LaneEmdenSolution:
    """Integrate Q″ + 2Q′/y = −4πρ_Q from the regular center out to y_max.

    With `fit` the tail constants are attached; an unreliable tail fit raises.
    """

    require_strict(params)
    if y_max < 1e3:
        raise DomainError(f"y_max={y_max!r} must be at least 1e3")
    if tol <= 0:
        raise DomainError("tol must be positive")

    q0, dq0 = _center_series(params.gamma, np.array([SERIES_SWITCH]))
    result = integrate(
        None,
        _log_field(params),
        SERIES_SWITCH,
        [float(q0[0]), SERIES_SWITCH * float(dq0[0])],
        y_max,
        tol,
        log_y=True,
        watch_density=False,
    )
    q_path = result.states[:, 0]
    if np.any(q_path <= Q_FLOOR) or result.y_end < y_max * (1.0 - 1e-9):
        bad = float(result.y[int(np.argmin(q_path))])
        raise PositivityViolation(f"Q lost positivity near y={bad:.6g} (gamma={params.gamma})")

    inner_y = np.linspace(0.0, SERIES_SWITCH, 11)[:-1]
    inner_q, inner_dq = _center_series(params.gamma, inner_y)
    le = LaneEmdenSolution(
        params=params,
        y=np.concatenate([inner_y, result.y]),
        Q=np.concatenate([inner_q, q_path]),
        dQ=np.concatenate([inner_dq, result.states[:, 1] / result.y]),
        y_max=float(y_max),
        dense=result.dense,
    )
    if fit:
        le = replace(le, tail=fit_tail(params, le))
    return le


def ustar(params: GammaParams, le: LaneEmdenSolution, y: Optional[np.ndarray] = None) -> np.ndarray:
    """u* = (3γ−4)Q′/(4πρ_Q) − (2−γ)y on the solution grid or at y."""

    grid = le.y if y is None else np.asarray(y, dtype=float)
    q, dq = le.evaluate(grid)
    rho = density_of(params, q)
    gamma = params.gamma
    return (3.0 * gamma - 4.0) * dq / (4.0 * math.pi * rho) - (2.0 - gamma) * grid


def ustar_by_quadrature(params: GammaParams, le: LaneEmdenSolution, y: float) -> float:
    """u*(y) from (y²ρu*)′ = −f·y², f = 2ρ + (2−γ)yρ′, integrated from the center."""

    if y <= 0:
        return 0.0
    gamma = params.gamma

    def source(r: float) -> float:
        q, dq = le.evaluate(r)
        rho = float(density_of(params, q)[0])
        drho = rho ** (2.0 - gamma) * float(dq[0]) / gamma
        return (2.0 * rho + (2.0 - gamma) * r * drho) * r * r

    integral, _ = quad(source, 0.0, y, epsabs=1e-14, epsrel=1e-12, limit=200)
    rho_y = float(le.density(y)[0])
    return -integral / (y * y * rho_y)


def laneemden_residual(params: GammaParams, le: LaneEmdenSolution, y: np.ndarray) -> np.ndarray:
    """Scaled residual of (yQ′)′·y + yQ′ + 4πy²ρ_Q by a fourth-order stencil in ln y."""

    y = np.asarray(y, dtype=float)
    h = 1e-3
    s = np.log(y)

    def p_of(shift: float) -> np.ndarray:
        yy = np.exp(s + shift)
        _, dq = le.evaluate(yy)
        return yy * dq

    dp_ds = (-p_of(2 * h) + 8 * p_of(h) - 8 * p_of(-h) + p_of(-2 * h)) / (12 * h)
    p = p_of(0.0)
    source = 4.0 * math.pi * y * y * le.density(y)
    return np.abs(dp_ds + p + source) / (np.abs(p) + source)


def _tail_grid(lo: float, hi: float) -> np.ndarray:
    decades = math.log10(hi / lo)
    count = max(int(math.ceil(decades * SAMPLES_PER_DECADE)), 16)
    return np.geomspace(lo, hi, count)


def tail_corrections(params: GammaParams) -> Tuple[Correction, ...]:
    """Harmonics generated at second and third order by the quadratic nonlinearity."""

    return ((-params.mu, (0, 2)), (-2.0 * params.mu, (1, 3)))


def fit_tail(
    params: GammaParams,
    le: LaneEmdenSolution,
    *,
    window: Optional[Tuple[float, float]] = None,
    free: bool = True,
) -> TailFit:
    """Fit y^μ(y^(2/(2−γ))ρ_Q − k) ≈ c2·sin(ν ln y + d2) over the tail window."""

    lo, hi = window or (min(TAIL_WINDOW_LO, math.sqrt(le.y_max)), le.y_max)
    if not 0 < lo < hi <= le.y_max:
        raise DomainError(f"tail window ({lo}, {hi}) outside (0, {le.y_max}]")
    grid = _tail_grid(lo, hi)
    corrections = tail_corrections(params)

    density = le.density(grid)
    scaled = grid**params.mu * (grid**params.density_exponent * density - params.k)
    fit = fit_log_oscillation(
        grid, scaled, params.nu, corrections=corrections, max_relative_residual=MAX_TAIL_RESIDUAL
    )

    velocity = ustar(params, le, grid)
    ustar_fit = fit_log_oscillation(grid, grid ** (params.mu - 1.0) * velocity, params.nu, corrections=corrections)

    free_fit: Optional[FreeOscillationFit] = None
    if free:
        try:
            free_fit = free_oscillation_fit(grid, scaled, params.mu, fit, corrections=corrections)
        except RuntimeError:
            free_fit = None

    return TailFit(
        c2=fit.amplitude,
        d2=fit.phase,
        relative_residual=fit.relative_residual,
        window=fit.window,
        samples=fit.samples,
        density_exponent=density_decay_exponent(params, le),
        ustar_amplitude=ustar_fit.amplitude,
        ustar_phase=ustar_fit.phase,
        free=free_fit,
    )


def fit_ustar_tail(params: GammaParams, le: LaneEmdenSolution) -> OscillationFit:
    lo = min(TAIL_WINDOW_LO, math.sqrt(le.y_max))
    grid = _tail_grid(lo, le.y_max)
    velocity = ustar(params, le, grid)
    return fit_log_oscillation(
        grid, grid ** (params.mu - 1.0) * velocity, params.nu, corrections=tail_corrections(params)
    )


def density_decay_exponent(params: GammaParams, le: LaneEmdenSolution) -> float:
    """Slope of ln ρ_Q against ln y over [10², y_max]."""

    grid = _tail_grid(DECAY_WINDOW_LO, le.y_max)
    slope, _ = np.polyfit(np.log(grid), np.log(le.density(grid)), 1)
    return float(slope)


def scale(
    le: LaneEmdenSolution, lam: float, y: np.ndarray | float
) -> Tuple[np.ndarray, np.ndarray]:
    """(Q_λ, u_λ) with Q_λ(y) = λ^(−2(γ−1)/(2−γ))·Q(y/λ) and u_λ(y) = λ·u*(y/λ)."""

    if lam <= 0:
        raise DomainError(f"lambda={lam!r} must be positive")
    params = le.params
    y_arr = np.atleast_1d(np.asarray(y, dtype=float))
    inner = y_arr / lam
    if np.any(inner < 0) or np.any(inner > le.y_max):
        raise DomainError(f"y/lambda outside the computed domain [0, {le.y_max:.3e}]")
    gamma = params.gamma
    q, _ = le.evaluate(inner)
    q_lam = lam ** (-2.0 * (gamma - 1.0) / (2.0 - gamma)) * q
    u_lam = lam * ustar(params, le, inner)
    return q_lam, u_lam


def scaled_density(le: LaneEmdenSolution, lam: float, y: np.ndarray | float) -> np.ndarray:
    q_lam, _ = scale(le, lam, y)
    return density_of(le.params, q_lam)


def pointwise_bounds(le: LaneEmdenSolution) -> Tuple[float, float]:
    """Constants c ≤ Q·⟨y⟩^(2(γ−1)/(2−γ)) ≤ C over the grid."""

    gamma = le.params.gamma
    weight = (1.0 + le.y**2) ** ((gamma - 1.0) / (2.0 - gamma))
    ratio = le.Q * weight
    return float(np.min(ratio)), float(np.max(ratio))


def interior_deviation(
    params: GammaParams, le: LaneEmdenSolution, profile: Profile, lam: float, *, y_hi: Optional[float] = None
) -> float:
    """Sup relative difference between ρ̃ and the λ-scaled Lane-Emden density."""

    upper = 0.5 * params.y_f if y_hi is None else y_hi
    mask = profile.y <= upper
    if not np.any(mask):
        raise DomainError("profile has no samples in the interior window")
    y = profile.y[mask]
    model = scaled_density(le, lam, y)
    return float(np.max(np.abs(profile.rho[mask] - model) / model))


def best_fit_interior(
    params: GammaParams, le: LaneEmdenSolution, profile: Profile, lam_guess: float, *, y_hi: Optional[float] = None
) -> Tuple[float, float]:
    """λ minimising the interior deviation in [λ/2, 2λ], with that deviation."""

    def objective(log_lam: float) -> float:
        try:
            return interior_deviation(params, le, profile, math.exp(log_lam), y_hi=y_hi)
        except DomainError:
            return math.inf

    centre = math.log(lam_guess)
    result = minimize_scalar(
        objective, bounds=(centre - math.log(2.0), centre + math.log(2.0)), method="bounded"
    )
    lam = math.exp(float(result.x))
    return lam, interior_deviation(params, le, profile, lam, y_hi=y_hi)
