"""Order-by-order Taylor solutions of the self-similar system at singular points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from ..core.params import require_strict
from ..errors import HunterProfilesError
from ..models import GammaParams, NormalFormParams, SonicPointData, State
from ..numerics.power_series import TruncatedSeries
from .sonic import ORIGIN_SLOPE, characteristic_params_at_sonic

DEFAULT_ORDER = 10
DEFAULT_SAFETY = 0.5
CONDITION_LIMIT = 1e12

SeriesResidual = Callable[
    [TruncatedSeries, TruncatedSeries, TruncatedSeries],
    Tuple[TruncatedSeries, TruncatedSeries],
]


class Resonant(HunterProfilesError):
    """Raised when the normal-form index κ is a negative integer ≤ −2."""


class ResonantOrder(Resonant):
    """Raised when the order-k coefficient system is numerically singular."""

    def __init__(self, order: int, condition: float) -> None:
        super().__init__(f"coefficient system at order {order} has condition {condition:.3e}")
        self.order = order
        self.condition = condition


class TrustRegionExceeded(HunterProfilesError):
    """Raised when a series is evaluated outside its estimated trust region."""


@dataclass(slots=True, frozen=True)
class TaylorSolution:
    """Truncated Taylor expansion of (ρ̃, ũ) about a singular point."""

    center: float
    coeffs_rho: np.ndarray
    coeffs_u: np.ndarray
    radius_estimate: float
    residual_norms: np.ndarray

    @property
    def order(self) -> int:
        return self.coeffs_rho.size - 1


def _trial_series(coeffs: np.ndarray, order: int) -> TruncatedSeries:
    return TruncatedSeries(coeffs, order=order)


def solve_singular_taylor(
    residual_fn: SeriesResidual,
    center: float,
    value0: Tuple[float, float],
    value1: Tuple[float, float],
    order: int,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Coefficients of a solution through a rank-one singular point.

    `residual_fn(t, rho, u)` returns the two residual series of the system for
    series ansätze in the local variable t = y − center. With ℓ the left null
    vector of the leading coefficient matrix and m its complement, each pair
    (r_{k+1}, u_{k+1}) solves m·Res_k = 0 and ℓ·Res_{k+1} = 0; both are affine
    in the pair and are evaluated at the zero and unit trial vectors.
    """

    if order < 2:
        raise ValueError("order must be at least 2")
    work = order + 1
    t = TruncatedSeries.variable(0.0, work)
    rho = np.zeros(work + 1)
    u = np.zeros(work + 1)
    rho[0], u[0] = value0
    rho[1], u[1] = value1

    def residual_at(r: np.ndarray, v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        res_rho, res_u = residual_fn(t, _trial_series(r, work), _trial_series(v, work))
        return res_rho.c, res_u.c

    leading = np.zeros((2, 2))
    base_rho, base_u = residual_at(rho, u)
    for column, (dr, du) in enumerate(((1.0, 0.0), (0.0, 1.0))):
        r_trial, u_trial = rho.copy(), u.copy()
        r_trial[1] += dr
        u_trial[1] += du
        trial_rho, trial_u = residual_at(r_trial, u_trial)
        leading[:, column] = [trial_rho[0] - base_rho[0], trial_u[0] - base_u[0]]
    left, _, _ = np.linalg.svd(leading)
    range_row, null_row = left[:, 0], left[:, 1]

    for k in range(1, order):
        def functionals(r: np.ndarray, v: np.ndarray) -> np.ndarray:
            res_rho, res_u = residual_at(r, v)
            return np.array(
                [
                    range_row @ np.array([res_rho[k], res_u[k]]),
                    null_row @ np.array([res_rho[k + 1], res_u[k + 1]]),
                ]
            )

        rho[k + 1 :] = 0.0
        u[k + 1 :] = 0.0
        f0 = functionals(rho, u)
        system = np.zeros((2, 2))
        for column in range(2):
            r_trial, u_trial = rho.copy(), u.copy()
            if column == 0:
                r_trial[k + 1] = 1.0
            else:
                u_trial[k + 1] = 1.0
            system[:, column] = functionals(r_trial, u_trial) - f0
        condition = np.linalg.cond(system)
        if not math.isfinite(condition) or condition > CONDITION_LIMIT:
            raise ResonantOrder(k + 1, condition)
        rho[k + 1], u[k + 1] = np.linalg.solve(system, -f0)

    coeffs_rho = rho[: order + 1].copy()
    coeffs_u = u[: order + 1].copy()
    final_rho, final_u = residual_at(np.append(coeffs_rho, 0.0), np.append(coeffs_u, 0.0))
    scale = max(float(np.max(np.abs(coeffs_rho))), float(np.max(np.abs(coeffs_u))), 1e-300)
    norms = np.hypot(final_rho[:order], final_u[:order]) / scale
    return coeffs_rho, coeffs_u, norms


def radius_from_coefficients(*coefficient_sets: np.ndarray) -> float:
    """Geometric fit of log|c_n| against n; the smallest estimate wins."""

    scale = max(float(np.max(np.abs(c))) for c in coefficient_sets)
    estimates = []
    for coeffs in coefficient_sets:
        n = np.arange(1, coeffs.size)
        magnitudes = np.abs(coeffs[1:])
        keep = magnitudes > 1e-13 * scale
        if np.count_nonzero(keep) < 3:
            continue
        slope, _ = np.polyfit(n[keep], np.log(magnitudes[keep]), 1)
        estimates.append(math.exp(-slope))
    return min(estimates) if estimates else math.inf


def _sonic_residual(params: GammaParams, center: float) -> SeriesResidual:
    gamma = params.gamma

    def residual_fn(t: TruncatedSeries, rho: TruncatedSeries, u: TruncatedSeries):
        y = t + center
        v = u + (2.0 - gamma) * y
        drho, du = rho.deriv(), u.deriv()
        mass = v * drho + rho * du + 2.0 * rho * (u + y) * y.reciprocal()
        momentum = (
            gamma * rho ** (gamma - 2.0) * drho
            + v * du
            + (gamma - 1.0) * u
            + params.coupling * rho * v
        )
        return mass, momentum

    return residual_fn


def _origin_residual(params: GammaParams) -> SeriesResidual:
    gamma = params.gamma

    def residual_fn(t: TruncatedSeries, rho: TruncatedSeries, u: TruncatedSeries):
        y = t
        v = u + (2.0 - gamma) * y
        drho, du = rho.deriv(), u.deriv()
        mass = y * (v * drho + rho * du) + 2.0 * rho * (u + y)
        momentum = (
            gamma * rho ** (gamma - 2.0) * drho
            + v * du
            + (gamma - 1.0) * u
            + params.coupling * rho * v
        )
        return mass, momentum

    return residual_fn


def model_residual(kappa: float) -> SeriesResidual:
    """Decoupled model u′ = 1, t·ρ′ + κ·ρ = 0, singular at t = 0.

    For κ = −n the order-n coefficient system loses rank.
    """

    def residual_fn(t: TruncatedSeries, rho: TruncatedSeries, u: TruncatedSeries):
        return u.deriv() - 1.0, t * rho.deriv() + kappa * rho

    return residual_fn


def _check_resonance(nf: NormalFormParams) -> None:
    if nf.is_resonant:
        raise Resonant(f"normal-form index kappa={nf.kappa!r} is a negative integer")


def taylor_at_sonic(params: GammaParams, sp: SonicPointData, order: int = DEFAULT_ORDER) -> TaylorSolution:
    require_strict(params)
    _check_resonance(characteristic_params_at_sonic(params, sp))
    coeffs_rho, coeffs_u, norms = solve_singular_taylor(
        _sonic_residual(params, sp.y_star),
        sp.y_star,
        (sp.rho0, sp.u0),
        (sp.rho1, sp.u1),
        order,
    )
    return TaylorSolution(
        center=sp.y_star,
        coeffs_rho=coeffs_rho,
        coeffs_u=coeffs_u,
        radius_estimate=radius_from_coefficients(coeffs_rho, coeffs_u),
        residual_norms=norms,
    )


def taylor_at_origin(params: GammaParams, rho_center: float, order: int = DEFAULT_ORDER) -> TaylorSolution:
    """Regular-center expansion: ρ̃′(0) = 0, ũ(0) = 0, ũ′(0) = −2/3."""

    require_strict(params)
    coeffs_rho, coeffs_u, norms = solve_singular_taylor(
        _origin_residual(params),
        0.0,
        (rho_center, 0.0),
        (0.0, ORIGIN_SLOPE),
        order,
    )
    return TaylorSolution(
        center=0.0,
        coeffs_rho=coeffs_rho,
        coeffs_u=coeffs_u,
        radius_estimate=radius_from_coefficients(coeffs_rho, coeffs_u),
        residual_norms=norms,
    )


def evaluate(ts: TaylorSolution, y: float, *, safety: float = DEFAULT_SAFETY) -> Tuple[State, Tuple[float, float]]:
    """Horner evaluation of the state and its derivative at y."""

    offset = y - ts.center
    if abs(offset) >= ts.radius_estimate * safety:
        raise TrustRegionExceeded(
            f"|y - center| = {abs(offset):.3e} exceeds {safety} x radius {ts.radius_estimate:.3e}"
        )
    rho = np.polynomial.polynomial.polyval(offset, ts.coeffs_rho)
    u = np.polynomial.polynomial.polyval(offset, ts.coeffs_u)
    drho = np.polynomial.polynomial.polyval(offset, np.polynomial.polynomial.polyder(ts.coeffs_rho))
    du = np.polynomial.polynomial.polyval(offset, np.polynomial.polynomial.polyder(ts.coeffs_u))
    return State(rho=float(rho), u=float(u)), (float(drho), float(du))
