"""Sonic-point conditions, the Larson-Penston-Hunter branch and normal-form parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from ..core.params import require_strict
from ..errors import DomainError, HunterProfilesError
from ..models import GammaParams, NormalFormParams, SonicPointData

ORIGIN_SLOPE = -2.0 / 3.0


class BranchLost(HunterProfilesError):
    """Raised when the sonic quadratic has no real root for the requested ε."""


class DegenerateBranch(HunterProfilesError):
    """Raised when a + bU vanishes so κ is undefined."""


def omega_of_eps(params: GammaParams, eps: float) -> float:
    if 1.0 + eps <= 0.0:
        raise DomainError(f"eps={eps!r} gives a non-positive sonic ω̃")
    return (2.0 - params.gamma) / (1.0 + eps)


def _characteristic_coefficients(
    params: GammaParams, omega0: float, rho0: float, y_star: float
) -> Tuple[float, float, float, float]:
    gamma = params.gamma
    yw = y_star * omega0
    shifted = omega0 + (gamma - 1.0)
    a = (2.0 * (2.0 - gamma) + (gamma - 3.0) * shifted) / (4.0 * yw)
    b = -(gamma + 1.0) / (4.0 * rho0)
    cubic = (
        -(gamma + 3.0) * omega0**2
        + (-2.0 * gamma**2 + gamma + 3.0) * omega0
        + (2.0 - gamma) * (gamma - 1.0) ** 2
    )
    gravity = params.coupling * (4.0 - 3.0 * gamma - 2.0 * omega0)
    c = rho0 / (4.0 * yw**2) * cubic - rho0**2 / (4.0 * yw**2) * gravity
    d = (3.0 * (gamma - 1.0) + (gamma - 3.0) * shifted) / (4.0 * yw)
    return a, b, c, d


def _branch_root(a: float, b: float, c: float, d: float, eps: float) -> float:
    disc = (a + d) ** 2 - 4.0 * b * c
    if disc < 0.0:
        raise BranchLost(f"sonic quadratic discriminant {disc:.3e} < 0 at eps={eps!r}")
    return (-(a + d) + math.sqrt(disc)) / (2.0 * b)


def solve_sonic(params: GammaParams, eps: float) -> SonicPointData:
    """Sonic location and LPH Taylor data parameterised by ω̃(y*) = (2−γ)/(1+ε)."""

    require_strict(params)
    gamma = params.gamma
    two_minus = 2.0 - gamma
    omega0 = omega_of_eps(params, eps)

    balance = 2.0 * omega0**2 + (gamma - 1.0) * omega0 + two_minus * (gamma - 1.0)
    p0 = (
        gamma ** (1.0 / two_minus)
        * omega0 ** (-2.0 / two_minus)
        * ((4.0 - 3.0 * gamma) / (4.0 * math.pi) * balance / omega0) ** (1.0 / two_minus)
    )
    y_star = gamma ** (two_minus / 2.0) * p0 ** ((gamma - 1.0) * two_minus / 2.0) / omega0**two_minus
    rho0 = p0 * y_star ** (-params.density_exponent)
    u0 = y_star * (omega0 - two_minus)

    a, b, c, d = _characteristic_coefficients(params, omega0, rho0, y_star)
    U = _branch_root(a, b, c, d, eps)
    R = (U * y_star * omega0 / rho0 - omega0 - (gamma - 1.0)) / omega0
    W = (4.0 - 3.0 * gamma) - 3.0 * omega0 - omega0 * R

    return SonicPointData(
        eps=eps,
        omega0=omega0,
        p0=p0,
        y_star=y_star,
        rho0=rho0,
        u0=u0,
        R=R,
        W=W,
        rho1=rho0 * R / y_star,
        u1=W + u0 / y_star,
        p1=p0 * (R + params.density_exponent) / y_star,
        w1=W / y_star,
    )


def characteristic_params_at_sonic(params: GammaParams, sp: SonicPointData) -> NormalFormParams:
    a, b, c, d = _characteristic_coefficients(params, sp.omega0, sp.rho0, sp.y_star)
    U = _branch_root(a, b, c, d, sp.eps)
    leading = a + b * U
    if abs(leading) <= 1e-14 * max(abs(a), abs(b * U), 1.0):
        raise DegenerateBranch(f"a + bU = {leading:.3e} at eps={sp.eps!r}")
    return NormalFormParams(a=a, b=b, c=c, d=d, U=U, kappa=(d + b * U) / leading)


def origin_params(rho_center: float) -> NormalFormParams:
    """Normal form of the regular center; U = ũ′(0) = −2/3 and κ = 2."""

    if rho_center <= 0:
        raise DomainError(f"central density must be positive, got {rho_center!r}")
    a, b, c, d = rho_center, 0.0, 2.0 * rho_center, 2.0 * rho_center
    U = ORIGIN_SLOPE
    return NormalFormParams(a=a, b=b, c=c, d=d, U=U, kappa=(d + b * U) / (a + b * U))


def r_quadratic_residual(params: GammaParams, omega0: float, R: float) -> float:
    if omega0 <= 0:
        raise DomainError(f"omega0={omega0!r} must be positive")
    g = params.gamma
    return (
        -(1.0 + g) * omega0**2 * R**2
        + (9.0 - 7.0 * g - 8.0 * omega0) * omega0 * R
        - 6.0 * omega0**2
        + (8.0 - 6.0 * g) * omega0
        + (-3.0 * g**2 + 9.0 * g - 6.0)
        + (4.0 - 3.0 * g) * (2.0 - g) * (1.0 - g) / omega0
    )


def solvability_factor(nf: NormalFormParams, order: int) -> float:
    return nf.solvability_factor(order)


@dataclass(slots=True, frozen=True)
class SonicBranchRow:
    """One row of an ε tabulation of the LPH branch."""

    eps: float
    admissible: bool
    omega0: float = math.nan
    p0: float = math.nan
    y_star: float = math.nan
    R: float = math.nan
    W: float = math.nan
    kappa: float = math.nan


def sonic_branch_scan(params: GammaParams, eps_values: Iterable[float]) -> List[SonicBranchRow]:
    """Tabulate the LPH branch; inadmissible ε values are kept with admissible=False."""

    rows: List[SonicBranchRow] = []
    for eps in eps_values:
        try:
            sp = solve_sonic(params, eps)
            nf = characteristic_params_at_sonic(params, sp)
        except (BranchLost, DegenerateBranch, DomainError):
            rows.append(SonicBranchRow(eps=eps, admissible=False))
            continue
        rows.append(
            SonicBranchRow(
                eps=eps,
                admissible=True,
                omega0=sp.omega0,
                p0=sp.p0,
                y_star=sp.y_star,
                R=sp.R,
                W=sp.W,
                kappa=nf.kappa,
            )
        )
    return rows
