"""Right-hand sides, variable transforms and residuals of the self-similar ODE."""

from __future__ import annotations

import math
from typing import Callable, Tuple

import numpy as np

from ..errors import HunterProfilesError
from ..models import EnthalpyState, GammaParams, PWState, State

DEFAULT_TOL_SONIC = 1e-9
LOG_RHO_LIMIT = 700.0

Vector = Tuple[float, float]


class SonicSingular(HunterProfilesError):
    """Raised when the coefficient matrix is rank deficient (D ≈ 0)."""

    def __init__(self, y: float, discriminant: float) -> None:
        super().__init__(f"sonic discriminant {discriminant:.3e} at y={y:.6g}")
        self.y = y
        self.discriminant = discriminant


class OriginSingular(HunterProfilesError):
    """Raised when the right-hand side is requested at y <= 0."""


def sonic_discriminant(params: GammaParams, y: float, s: State) -> float:
    gamma = params.gamma
    v = s.u + (2.0 - gamma) * y
    return v * v - gamma * s.rho ** (gamma - 1.0)


def coefficient_matrices(params: GammaParams, y: float, s: State) -> Tuple[np.ndarray, np.ndarray]:
    """Matrix A and vector B of A·(ρ̃′, ũ′) + B = 0."""

    gamma = params.gamma
    rho, u = s.rho, s.u
    v = u + (2.0 - gamma) * y
    A = np.array([[v, rho], [gamma * rho ** (gamma - 2.0), v]])
    B = np.array(
        [
            2.0 * rho * (u + y) / y,
            (gamma - 1.0) * u + params.coupling * rho * v,
        ]
    )
    return A, B


def _solve_rho_u(params: GammaParams, y: float, rho: float, u: float) -> Tuple[float, float, float]:
    gamma = params.gamma
    v = u + (2.0 - gamma) * y
    sound = gamma * rho ** (gamma - 2.0)
    det = v * v - sound * rho
    b1 = 2.0 * rho * (u + y) / y
    b2 = (gamma - 1.0) * u + params.coupling * rho * v
    drho = -(v * b1 - rho * b2) / det
    du = -(v * b2 - sound * b1) / det
    return drho, du, det


def rhs_rho_u(
    params: GammaParams, y: float, s: State, *, tol_sonic: float = DEFAULT_TOL_SONIC
) -> Vector:
    if y <= 0:
        raise OriginSingular(f"right-hand side requested at y={y!r}")
    drho, du, det = _solve_rho_u(params, y, s.rho, s.u)
    if abs(det) <= tol_sonic:
        raise SonicSingular(y, det)
    return drho, du


def rho_u_field(
    params: GammaParams, *, tol_sonic: float = 0.0
) -> Callable[[float, np.ndarray], np.ndarray]:
    """Array form of the right-hand side for the integrator.

    With a positive `tol_sonic` the field raises `SonicSingular` inside the
    band |D| ≤ tol_sonic; the default only rejects D = 0.
    """

    def field(y: float, x: np.ndarray) -> np.ndarray:
        drho, du, det = _solve_rho_u(params, y, x[0], x[1])
        if abs(det) <= tol_sonic:
            raise SonicSingular(y, det)
        return np.array([drho, du])

    return field


def to_log(y: float, s: State) -> np.ndarray:
    """(ln ρ̃, ũ/y), the variables of the inward shots."""

    return np.array([math.log(s.rho), s.u / y])


def from_log(y: float, x: np.ndarray) -> State:
    return State(rho=math.exp(min(max(x[0], -LOG_RHO_LIMIT), LOG_RHO_LIMIT)), u=x[1] * y)


def log_field(
    params: GammaParams, *, tol_sonic: float = 0.0
) -> Callable[[float, np.ndarray], np.ndarray]:
    """Right-hand side in (ln ρ̃, ũ/y).

    Inside a nested core ρ̃ grows by tens of orders of magnitude while ũ/y
    stays near −2/3; both variables remain O(1) in this form.
    """

    def field(y: float, x: np.ndarray) -> np.ndarray:
        s = from_log(y, x)
        drho, du, det = _solve_rho_u(params, y, s.rho, s.u)
        if abs(det) <= tol_sonic:
            raise SonicSingular(y, det)
        return np.array([drho / s.rho, (du - x[1]) / y])

    return field


def residual(params: GammaParams, y: float, s: State, ds: Vector) -> Vector:
    """A·ds + B; vanishes exactly when ds solves the system at (y, s)."""

    if y <= 0:
        raise OriginSingular(f"residual requested at y={y!r}")
    A, B = coefficient_matrices(params, y, s)
    r = A @ np.asarray(ds, dtype=float) + B
    return float(r[0]), float(r[1])


def to_pw(params: GammaParams, y: float, s: State) -> PWState:
    return PWState(
        p=y ** params.density_exponent * s.rho,
        w=s.u / y + (2.0 - params.gamma),
    )


def from_pw(params: GammaParams, z: float, s: PWState) -> State:
    return State(
        rho=s.p * z ** (-params.density_exponent),
        u=z * (s.w - (2.0 - params.gamma)),
    )


def rhs_pw(
    params: GammaParams, z: float, s: PWState, *, tol_sonic: float = DEFAULT_TOL_SONIC
) -> Vector:
    """Derivatives of (p̃, ω̃) from the exterior form of the equations."""

    if z <= 0:
        raise OriginSingular(f"right-hand side requested at z={z!r}")
    gamma = params.gamma
    two_minus = 2.0 - gamma
    p, w = s.p, s.w
    e11, e12 = w * z, p * z
    e21 = gamma / (z ** (gamma / two_minus) * p**two_minus)
    e22 = w * z
    f1 = (4.0 - 3.0 * gamma) / two_minus * p * (w - two_minus)
    f2 = (
        w * (w - two_minus)
        + (gamma - 1.0) * (w - two_minus)
        + z ** (-params.density_exponent)
        * (params.coupling * p * w - 2.0 * gamma / two_minus * p ** (gamma - 1.0))
    )
    det = e11 * e22 - e12 * e21
    if abs(det) <= tol_sonic:
        raise SonicSingular(z, det)
    dp = -(e22 * f1 - e12 * f2) / det
    dw = -(e11 * f2 - e21 * f1) / det
    return dp, dw


def to_enthalpy(params: GammaParams, s: State) -> EnthalpyState:
    gamma = params.gamma
    return EnthalpyState(w_enth=gamma / (gamma - 1.0) * s.rho ** (gamma - 1.0), u=s.u)


def from_enthalpy(params: GammaParams, s: EnthalpyState) -> State:
    gamma = params.gamma
    return State(rho=((gamma - 1.0) / gamma * s.w_enth) ** (1.0 / (gamma - 1.0)), u=s.u)


def enthalpy_rhs(
    params: GammaParams, y: float, s: EnthalpyState, *, tol_sonic: float = DEFAULT_TOL_SONIC
) -> Vector:
    """Derivatives of (w̃, ũ); w̃′ = γ·ρ̃^(γ−2)·ρ̃′."""

    state = from_enthalpy(params, s)
    drho, du = rhs_rho_u(params, y, state, tol_sonic=tol_sonic)
    return params.gamma * state.rho ** (params.gamma - 2.0) * drho, du
