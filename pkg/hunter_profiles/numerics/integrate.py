"""Adaptive Dormand-Prince integration with dense output and event detection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from ..core.system import SonicSingular, from_log, from_pw, log_field, rho_u_field, rhs_pw, sonic_discriminant
from ..errors import HunterProfilesError
from ..models import GammaParams, PWState, State

DENSITY_FLOOR = 1e-14
OVERFLOW_GUARD = 1e12
EVENT_XTOL = 1e-12
SUBSTEPS = 16
SONIC_EVENT_MARGIN = 2.0

Field = Callable[[float, np.ndarray], np.ndarray]


class StiffnessFailure(HunterProfilesError):
    """Raised when the step size underflows away from any known singularity."""


class EventKind(str, Enum):
    SONIC_CROSSING = "SonicCrossing"
    DENSITY_FLOOR = "DensityFloor"
    BLOWUP = "Blowup"
    STOP_CONDITION = "StopCondition"


class RhsKind(str, Enum):
    """Which form of the self-similar system to integrate."""

    RHO_U = "rho_u"
    PW = "pw"
    LOG = "log"


@dataclass(slots=True)
class IntegrationResult:
    """Accepted steps of one integration plus the dense interpolant."""

    y: np.ndarray
    states: np.ndarray
    dense: Callable[[float], np.ndarray]
    events: List[Tuple[EventKind, float]] = field(default_factory=list)
    halted_by: Optional[EventKind] = None
    kind: RhsKind = RhsKind.RHO_U
    nfev: int = 0

    @property
    def y_end(self) -> float:
        return float(self.y[-1])

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def state_at(self, y: float) -> np.ndarray:
        return np.asarray(self.dense(y), dtype=float)

    @classmethod
    def from_samples(
        cls,
        y: Sequence[float],
        states: Sequence[Sequence[float]],
        *,
        dense: Optional[Callable[[float], np.ndarray]] = None,
        kind: RhsKind = RhsKind.RHO_U,
    ) -> "IntegrationResult":
        """Wrap externally produced samples, interpolating with a cubic spline if needed."""

        y_arr = np.asarray(y, dtype=float)
        s_arr = np.asarray(states, dtype=float)
        if dense is None:
            order = np.argsort(y_arr)
            spline = CubicSpline(y_arr[order], s_arr[order], axis=0)
            dense = spline
        return cls(y=y_arr, states=s_arr, dense=dense, kind=kind)


def system_field(params: GammaParams, kind: RhsKind, *, tol_sonic: float = 0.0) -> Field:
    if kind is RhsKind.RHO_U:
        return rho_u_field(params, tol_sonic=tol_sonic)
    if kind is RhsKind.LOG:
        return log_field(params, tol_sonic=tol_sonic)

    def pw_field(z: float, x: np.ndarray) -> np.ndarray:
        return np.array(rhs_pw(params, z, PWState(p=x[0], w=x[1]), tol_sonic=tol_sonic))

    return pw_field


def _as_rho_u(params: GammaParams, kind: RhsKind, y: float, x: np.ndarray) -> State:
    if kind is RhsKind.PW:
        return from_pw(params, y, PWState(p=x[0], w=x[1]))
    if kind is RhsKind.LOG:
        return from_log(y, x)
    return State(rho=x[0], u=x[1])


def integrate(
    params: Optional[GammaParams],
    rhs: Union[RhsKind, Field],
    y0: float,
    s0: Union[State, PWState, Sequence[float]],
    y1: float,
    tol: float,
    *,
    log_y: bool = False,
    watch_density: bool = True,
    density_floor: float = DENSITY_FLOOR,
    overflow_guard: float = OVERFLOW_GUARD,
    stop_at_sonic: bool = False,
    tol_sonic: float = 0.0,
    stop_when: Optional[Callable[[float, np.ndarray], float]] = None,
    atol_factor: float = 1e-3,
    max_step: float = math.inf,
) -> IntegrationResult:
    """Integrate from y0 to y1 with the Dormand-Prince 5(4) pair.

    `rhs` is either a `RhsKind` of the self-similar system (then `params` is
    required) or an arbitrary field f(y, x). With `log_y` the independent
    variable is ln y. Density floor and overflow halt the integration and are
    recorded as events; sonic crossings are recorded and halt only when
    `stop_at_sonic` is set, in which case the halt comes once |D| ≤ 2·`tol_sonic`.
    The field itself is never evaluated inside |D| ≤ `tol_sonic`.
    For `RhsKind.LOG` the floor applies to exp(x[0]). `stop_when(y, x)`
    halts the integration where it falls through zero.
    """

    if tol <= 0:
        raise ValueError("tol must be positive")
    if tol_sonic < 0:
        raise ValueError("tol_sonic must be non-negative")
    kind = rhs if isinstance(rhs, RhsKind) else None
    if kind is not None and params is None:
        raise ValueError("params are required to integrate the self-similar system")
    base = system_field(params, kind, tol_sonic=tol_sonic) if kind is not None else rhs
    if isinstance(s0, (State, PWState)):
        x0 = s0.as_array()
    else:
        x0 = np.asarray(s0, dtype=float)
    if log_y and (y0 <= 0 or y1 <= 0):
        raise ValueError("log-y stepping needs positive endpoints")
    log_density = kind is RhsKind.LOG
    floor_level = math.log(density_floor) if log_density else density_floor

    def to_y(t: float) -> float:
        return math.exp(t) if log_y else t

    def fun(t: float, x: np.ndarray) -> np.ndarray:
        y = to_y(t)
        if watch_density and not log_density and x[0] < density_floor:
            x = np.array([density_floor, *x[1:]])
        try:
            dx = base(y, x)
        except SonicSingular:
            # rejected step; the solver shrinks h until it gives up next to D = 0
            return np.full_like(x, np.nan)
        return y * dx if log_y else dx

    kinds: List[EventKind] = []
    event_fns = []

    if watch_density:
        def floor_event(t: float, x: np.ndarray) -> float:
            return x[0] - floor_level

        floor_event.terminal = True
        floor_event.direction = -1
        event_fns.append(floor_event)
        kinds.append(EventKind.DENSITY_FLOOR)

    def blowup_event(t: float, x: np.ndarray) -> float:
        return overflow_guard - float(np.max(np.abs(x)))

    blowup_event.terminal = True
    blowup_event.direction = -1
    event_fns.append(blowup_event)
    kinds.append(EventKind.BLOWUP)

    if kind is not None:
        # D keeps the sign it has at y0 until the trajectory reaches the band
        side = 1.0 if sonic_discriminant(params, y0, _as_rho_u(params, kind, y0, x0)) >= 0 else -1.0

        def sonic_event(t: float, x: np.ndarray) -> float:
            y = to_y(t)
            state = _as_rho_u(params, kind, y, x)
            if state.rho <= 0:
                return math.nan
            d = sonic_discriminant(params, y, state)
            return side * d - SONIC_EVENT_MARGIN * tol_sonic if stop_at_sonic else d

        sonic_event.terminal = stop_at_sonic
        sonic_event.direction = -1 if stop_at_sonic else 0
        event_fns.append(sonic_event)
        kinds.append(EventKind.SONIC_CROSSING)

    if stop_when is not None:
        def stop_event(t: float, x: np.ndarray) -> float:
            return stop_when(to_y(t), x)

        stop_event.terminal = True
        stop_event.direction = -1
        event_fns.append(stop_event)
        kinds.append(EventKind.STOP_CONDITION)

    t0 = math.log(y0) if log_y else y0
    t1 = math.log(y1) if log_y else y1
    sol = solve_ivp(
        fun,
        (t0, t1),
        x0,
        method="RK45",
        rtol=tol,
        atol=tol * atol_factor,
        dense_output=True,
        events=event_fns,
        max_step=max_step,
    )

    ys = np.exp(sol.t) if log_y else np.asarray(sol.t, dtype=float)
    states = np.asarray(sol.y, dtype=float).T
    interpolant = sol.sol

    def dense(y: float) -> np.ndarray:
        return interpolant(np.log(y) if log_y else y)

    events: List[Tuple[EventKind, float]] = []
    for event_kind, times in zip(kinds, sol.t_events):
        for t in times:
            events.append((event_kind, to_y(float(t))))
    forward = t1 >= t0
    events.sort(key=lambda item: item[1] if forward else -item[1])

    halted_by: Optional[EventKind] = None
    if sol.status == 1:
        halted_by = events[-1][0] if events else None
        for event_kind, times in zip(kinds, sol.t_events):
            if len(times) and to_y(float(times[-1])) == ys[-1]:
                halted_by = event_kind
    elif sol.status == -1:
        if kind is not None and _near_sonic(params, kind, ys[-1], states[-1], tol_sonic):
            halted_by = EventKind.SONIC_CROSSING
            events.append((EventKind.SONIC_CROSSING, float(ys[-1])))
        else:
            raise StiffnessFailure(f"step size underflow near y={ys[-1]:.6g}: {sol.message}")

    return IntegrationResult(
        y=ys,
        states=states,
        dense=dense,
        events=events,
        halted_by=halted_by,
        kind=kind or RhsKind.RHO_U,
        nfev=int(sol.nfev),
    )


def _near_sonic(params: GammaParams, kind: RhsKind, y: float, x: np.ndarray, tol_sonic: float = 0.0) -> bool:
    state = _as_rho_u(params, kind, y, x)
    if state.rho <= 0:
        return False
    sound = params.gamma * state.rho ** (params.gamma - 1.0)
    return abs(sonic_discriminant(params, y, state)) < max(1e-4 * sound, SONIC_EVENT_MARGIN * tol_sonic)


def detect_sonic(params: GammaParams, result: IntegrationResult) -> Optional[float]:
    """First zero of D along the trajectory, refined on the dense output.

    D is sampled at `SUBSTEPS` points inside every accepted step, so a pair
    of zeros within one step is still bracketed.
    """

    def discriminant(y: float) -> float:
        state = _as_rho_u(params, result.kind, y, result.state_at(y))
        return sonic_discriminant(params, y, state)

    for y_a, y_b in zip(result.y[:-1], result.y[1:]):
        grid = np.linspace(float(y_a), float(y_b), SUBSTEPS + 1)
        values = [discriminant(float(y)) for y in grid]
        for i in range(SUBSTEPS):
            if values[i] == 0.0:
                return float(grid[i])
            if values[i] * values[i + 1] < 0.0:
                lo, hi = sorted((float(grid[i]), float(grid[i + 1])))
                return float(brentq(discriminant, lo, hi, xtol=EVENT_XTOL, rtol=4 * np.finfo(float).eps))
    if result.y.size and discriminant(float(result.y[-1])) == 0.0:
        return float(result.y[-1])
    return None
