"""γ-derived constants and the two explicit solutions of the self-similar system."""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from ..errors import DomainError
from ..models import ExplicitKind, GammaParams, Profile, State

GAMMA_MAX = 6.0 / 5.0


def derive_params(gamma: float) -> GammaParams:
    """Return k, y_f, μ, ν and θ0 for a polytropic index in [1, 6/5)."""

    if not (1.0 <= gamma < GAMMA_MAX):
        raise DomainError(f"gamma={gamma!r} outside [1, 6/5)")

    two_minus = 2.0 - gamma
    k = (gamma * (4.0 - 3.0 * gamma) / (2.0 * math.pi * two_minus**2)) ** (1.0 / two_minus)
    y_f = (
        math.sqrt(gamma)
        / two_minus
        * ((4.0 - 3.0 * gamma) / (2.0 * math.pi)) ** ((gamma - 1.0) / 2.0)
    )
    discriminant = -gamma * gamma - 20.0 * gamma + 28.0
    mu = (6.0 - 5.0 * gamma) / (2.0 * two_minus)
    nu = math.sqrt(discriminant) / (2.0 * two_minus)
    theta0 = math.atan(math.sqrt(discriminant) / (2.0 + gamma)) + math.pi
    return GammaParams(gamma=gamma, k=k, y_f=y_f, mu=mu, nu=nu, theta0=theta0)


def require_strict(params: GammaParams) -> None:
    """Reject the isothermal endpoint for modules that need (γ−1) > 0."""

    if not (1.0 < params.gamma < GAMMA_MAX):
        raise DomainError(f"gamma={params.gamma!r} must lie strictly inside (1, 6/5)")


def explicit_solution(params: GammaParams, kind: ExplicitKind, y: float) -> State:
    if kind is ExplicitKind.FRIEDMAN:
        if y < 0:
            raise DomainError("Friedman solution is defined for y >= 0")
        return State(rho=1.0 / (6.0 * math.pi), u=-2.0 * y / 3.0)
    if y <= 0:
        raise DomainError("far-field density is singular at the origin")
    return State(rho=params.k * y ** (-params.density_exponent), u=0.0)


def explicit_derivative(params: GammaParams, kind: ExplicitKind, y: float) -> Tuple[float, float]:
    """Closed-form (ρ̃′, ũ′) of an explicit solution."""

    if kind is ExplicitKind.FRIEDMAN:
        return 0.0, -2.0 / 3.0
    if y <= 0:
        raise DomainError("far-field density is singular at the origin")
    m = params.density_exponent
    return -m * params.k * y ** (-m - 1.0), 0.0


def friedman_sonic_point(params: GammaParams) -> float:
    """Location where the Friedman solution crosses the sonic locus."""

    gamma = params.gamma
    speed = (4.0 / 3.0 - gamma)
    return math.sqrt(gamma * (6.0 * math.pi) ** (1.0 - gamma)) / speed


def residue_matrix(params: GammaParams) -> Tuple[np.ndarray, np.ndarray]:
    """Negated residue of the linearisation about the far field, with its eigenvalues.

    The eigenvalues are −μ ± iν, ordered by increasing imaginary part.
    """

    gamma, k = params.gamma, params.k
    two_minus = 2.0 - gamma
    matrix = np.array(
        [
            [-2.0, -2.0 * k / two_minus**2],
            [2.0 * two_minus / k, (3.0 * gamma - 2.0) / two_minus],
        ]
    )
    eigenvalues = np.linalg.eigvals(matrix)
    eigenvalues = eigenvalues[np.argsort(eigenvalues.imag)]
    return matrix, eigenvalues


def explicit_profile(params: GammaParams, kind: ExplicitKind, y: np.ndarray) -> Profile:
    """Sample an explicit solution and its derivative on a grid."""

    grid = np.asarray(y, dtype=float)
    states = [explicit_solution(params, kind, float(point)) for point in grid]
    slopes = [explicit_derivative(params, kind, float(point)) for point in grid]
    return Profile(
        params=params,
        y=grid,
        rho=np.array([s.rho for s in states]),
        u=np.array([s.u for s in states]),
        drho=np.array([d[0] for d in slopes]),
        du=np.array([d[1] for d in slopes]),
    )
