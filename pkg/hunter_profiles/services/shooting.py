"""Sonic-point shooting: ε scans, defect roots and assembled Hunter-type profiles."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from ..analysis.laneemden import LaneEmdenSolution, best_fit_interior
from ..analysis.series import Resonant, TaylorSolution, TrustRegionExceeded, evaluate, taylor_at_sonic
from ..analysis.sonic import ORIGIN_SLOPE, BranchLost, DegenerateBranch, solve_sonic
from ..core.params import require_strict
from ..core.system import rho_u_field, to_log
from ..errors import DomainError, HunterProfilesError
from ..models import (
    GammaParams,
    HunterSolution,
    Profile,
    RunConfig,
    ShotDiagnostics,
    SonicPointData,
    State,
    TerminationKind,
)
from ..numerics.integrate import EventKind, IntegrationResult, RhsKind, StiffnessFailure, integrate

THREADS_ENV = "HUNTER_PROFILES_THREADS"
LOG_OVERFLOW = 600.0
GLUE_RTOL = 1e-6
ROOT_RTOL = 1e-12
ZERO_TOL = 1e-12
CROSSING_SLOPE_MIN = 1e-8
FARFIELD_RTOL = 0.01
SAMPLES_PER_DECADE = 200
BAND_SAMPLES = 9

_SKIPPED = (BranchLost, DegenerateBranch, Resonant, TrustRegionExceeded, DomainError)
_TERMINATIONS = {
    EventKind.DENSITY_FLOOR: TerminationKind.DENSITY_FLOOR,
    EventKind.BLOWUP: TerminationKind.BLOWUP,
    EventKind.SONIC_CROSSING: TerminationKind.SONIC_COLLISION,
}

ShotOutcome = Tuple[float, Optional[ShotDiagnostics], str]


class GlueMismatch(HunterProfilesError):
    """Raised when the trajectories disagree with the sonic series next to y*."""


class AmbiguousCrossing(HunterProfilesError):
    """Raised when y^(2/(2−γ))ρ̃ − k touches zero with vanishing slope."""


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    try:
        value = int(raw)
    except ValueError:
        return 1
    return value if value >= 1 else 1


def count_farfield_crossings(params: GammaParams, profile: Profile, *, validate: bool = True) -> int:
    """Sign changes of y^(2/(2−γ))ρ̃ − k along the profile.

    Samples within 1e-12·k of zero carry no sign. With `validate`, every
    crossing must have |d/dy(y^(2/(2−γ))ρ̃)| > 1e-8.
    """

    m = params.density_exponent
    excess = profile.p() - params.k
    slope = m * profile.y ** (m - 1.0) * profile.rho + profile.y**m * profile.drho
    signs = np.where(np.abs(excess) <= ZERO_TOL * params.k, 0, np.sign(excess)).astype(int)
    nonzero = np.flatnonzero(signs)
    crossings = 0
    for left, right in zip(nonzero[:-1], nonzero[1:]):
        if signs[left] == signs[right]:
            continue
        crossings += 1
        if not validate:
            continue
        weight = abs(excess[left]) / (abs(excess[left]) + abs(excess[right]))
        at_zero = (1.0 - weight) * slope[left] + weight * slope[right]
        if abs(at_zero) <= CROSSING_SLOPE_MIN:
            y_cross = (1.0 - weight) * profile.y[left] + weight * profile.y[right]
            raise AmbiguousCrossing(f"tangential crossing near y={y_cross:.6g} (slope {at_zero:.3e})")
    return crossings


def count_sonic_points(profile: Profile) -> Tuple[int, List[float]]:
    """Sign changes of the sonic discriminant D with their locations."""

    d = profile.discriminant()
    scale = profile.params.gamma * np.abs(profile.rho) ** (profile.params.gamma - 1.0)
    signs = np.where(np.abs(d) <= 1e-12 * scale, 0, np.sign(d)).astype(int)
    nonzero = np.flatnonzero(signs)
    locations: List[float] = []
    for left, right in zip(nonzero[:-1], nonzero[1:]):
        if signs[left] != signs[right]:
            locations.append(float(0.5 * (profile.y[left] + profile.y[right])))
    return len(locations), locations


@dataclass(slots=True, frozen=True)
class RootSpacingReport:
    """Observed geometric spacing of successive roots against the far-field prediction."""

    eps: Tuple[float, ...]
    slope: float
    predicted_slope: float
    lambda_ratios: Tuple[float, ...]
    predicted_ratio: float

    @property
    def slope_error(self) -> float:
        if not math.isfinite(self.slope):
            return math.inf
        return abs(self.slope - self.predicted_slope) / abs(self.predicted_slope)


def root_spacing_report(solutions: Sequence[HunterSolution], params: GammaParams) -> RootSpacingReport:
    """Slope of ln|ε_i| against i, compared with −πμ/ν; λ ratios against e^(−π/ν)."""

    ordered = sorted(solutions, key=lambda s: s.index)
    eps = tuple(s.eps for s in ordered)
    slope = math.nan
    if len(ordered) >= 2:
        slope, _ = np.polyfit([s.index for s in ordered], np.log(np.abs(eps)), 1)
    ratios = tuple(b.lambda_est / a.lambda_est for a, b in zip(ordered[:-1], ordered[1:]))
    return RootSpacingReport(
        eps=eps,
        slope=float(slope),
        predicted_slope=-math.pi * params.mu / params.nu,
        lambda_ratios=ratios,
        predicted_ratio=math.exp(-math.pi / params.nu),
    )


class HunterShooter:
    """Shoots inward from the sonic point and enumerates defect roots in ε.

    Trajectories run in (ln ρ̃, ũ/y) with log-y steps. An inward shot stops
    at y_min or, earlier, once y^(2/(2−γ))ρ̃ < core_depth^(2/(2−γ)), i.e. once
    y is below core_depth times the local Lane-Emden scale ρ̃^(−(2−γ)/2).
    The defect ũ/y + 2/3 is read there.
    """

    def __init__(
        self,
        params: GammaParams,
        *,
        config: Optional[RunConfig] = None,
        lane_emden: Optional[LaneEmdenSolution] = None,
        workers: Optional[int] = None,
        debug_logger: Optional[Callable[[str], None]] = None,
    ) -> None:
        require_strict(params)
        self.params = params
        self.config = config or RunConfig(gamma=params.gamma)
        self.lane_emden = lane_emden
        self.workers = workers or worker_count()
        self.failures: List[Tuple[float, str]] = []
        self._debug_logger = debug_logger

    def _debug(self, message: str) -> None:
        if self._debug_logger:
            self._debug_logger(message)

    @property
    def y_min(self) -> float:
        return self.config.ymin_factor * self.params.y_f

    @property
    def y_max(self) -> float:
        return self.config.ymax_factor * self.params.y_f

    @property
    def delta(self) -> float:
        return self.config.delta_factor * self.params.y_f

    def _launch(self, eps: float) -> Tuple[SonicPointData, TaylorSolution]:
        sp = solve_sonic(self.params, eps)
        return sp, taylor_at_sonic(self.params, sp, self.config.order)

    def core_condition(self) -> Callable[[float, np.ndarray], float]:
        """m·ln y + ln ρ̃ − m·ln(core_depth); negative inside the core."""

        m = self.params.density_exponent
        level = m * math.log(self.config.core_depth)

        def condition(y: float, x: np.ndarray) -> float:
            return m * math.log(y) + float(x[0]) - level

        return condition

    def _trajectory(
        self, start: float, state: State, end: float, tol: float, *, core_stop: bool = False
    ) -> IntegrationResult:
        return integrate(
            self.params,
            RhsKind.LOG,
            start,
            to_log(start, state),
            end,
            tol,
            log_y=True,
            overflow_guard=LOG_OVERFLOW,
            stop_at_sonic=True,
            tol_sonic=self.config.tol_sonic,
            stop_when=self.core_condition() if core_stop else None,
        )

    def shoot_inward(
        self,
        eps: float,
        *,
        y_min: Optional[float] = None,
        tol: Optional[float] = None,
    ) -> ShotDiagnostics:
        """Launch from the sonic series at y* − δ and integrate toward the center.

        Integrator events end the shot early; such shots keep a NaN defect
        and report ũ/y + 2/3 at their last point as `terminal_defect`.
        """

        y_min = self.y_min if y_min is None else y_min
        tol = self.config.tol if tol is None else tol
        sp, ts = self._launch(eps)
        start = sp.y_star - self.delta
        if not 0.0 < y_min < start:
            raise DomainError(f"y_min={y_min!r} must lie in (0, y* - delta)")
        state, _ = evaluate(ts, start)

        try:
            result = self._trajectory(start, state, y_min, tol, core_stop=True)
        except StiffnessFailure as exc:
            self._debug(f"eps={eps:.6e}: {exc}")
            return ShotDiagnostics(
                eps=eps,
                defect=math.nan,
                termination=TerminationKind.STIFF,
                terminal_defect=math.nan,
                y_end=start,
                y_star=sp.y_star,
                steps=0,
            )

        return _diagnostics(eps, sp, result, y_min)

    def _shot_outcome(self, eps: float) -> ShotOutcome:
        try:
            return eps, self.shoot_inward(eps), ""
        except _SKIPPED as exc:
            return eps, None, str(exc)

    def scan(self, eps_values: Sequence[float]) -> List[ShotDiagnostics]:
        """Shoot every ε of the grid, in grid order, skipping unlaunchable points."""

        if self.workers > 1:
            tasks = [(self.params, self.config, float(eps)) for eps in eps_values]
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                outcomes = list(pool.map(_shot_task, tasks, chunksize=max(1, len(tasks) // (4 * self.workers))))
        else:
            outcomes = [self._shot_outcome(eps) for eps in eps_values]

        shots = []
        for eps, shot, reason in outcomes:
            if shot is None:
                self._debug(f"skipping eps={eps:.6e}: {reason}")
            else:
                shots.append(shot)
        return shots

    def eps_grid(self, eps_lo: float, eps_hi: float, grid_density: int, *, negative: bool = False) -> np.ndarray:
        if not 0.0 < eps_lo < eps_hi:
            raise DomainError("scan bounds must satisfy 0 < eps_lo < eps_hi")
        count = int(math.ceil(math.log10(eps_hi / eps_lo) * grid_density)) + 1
        grid = np.geomspace(eps_lo, eps_hi, count)
        return -grid if negative else grid

    def _defect_value(self, eps: float) -> float:
        try:
            shot = self.shoot_inward(eps)
        except _SKIPPED:
            return math.nan
        return shot.value

    def refine_root(self, left: ShotDiagnostics, right: ShotDiagnostics) -> float:
        """Brent iteration on a sign-changing bracket down to relative width 1e-12."""

        lo, hi = sorted((left.eps, right.eps))
        return float(brentq(self._defect_value, lo, hi, xtol=1e-300, rtol=ROOT_RTOL, maxiter=200))

    def is_root(self, eps: float, left: ShotDiagnostics, right: ShotDiagnostics) -> bool:
        """A refined point is a root only if its defect is below both bracket ends.

        Brackets around a jump of the defect (a shot switching termination
        kind) also converge, onto the jump.
        """

        value = self._defect_value(eps)
        return math.isfinite(value) and abs(value) < min(abs(left.value), abs(right.value))

    def find_hunter(
        self,
        eps_lo: Optional[float] = None,
        eps_hi: Optional[float] = None,
        grid_density: Optional[int] = None,
        *,
        negative: Optional[bool] = None,
    ) -> List[HunterSolution]:
        """Scan ε on a log grid, refine every sign change and assemble each root.

        Roots whose assembly fails are logged and listed in `failures`.
        """

        eps_lo = self.config.scan_lo if eps_lo is None else eps_lo
        eps_hi = self.config.scan_hi if eps_hi is None else eps_hi
        grid_density = self.config.grid_per_decade if grid_density is None else grid_density
        negative = self.config.negative if negative is None else negative

        grid = self.eps_grid(eps_lo, eps_hi, grid_density, negative=negative)
        self._debug(f"scanning {grid.size} eps values with {self.workers} worker(s)")
        shots = self.scan(grid)

        roots: List[float] = []
        for left, right in zip(shots[:-1], shots[1:]):
            if not (left.sign and right.sign and left.sign != right.sign):
                continue
            root = self.refine_root(left, right)
            if not self.is_root(root, left, right):
                self._debug(f"discarding jump of the defect at eps={root:.12e}")
                continue
            self._debug(f"defect root eps={root:.12e} in [{left.eps:.6e}, {right.eps:.6e}]")
            roots.append(root)

        self.failures = []
        solutions: List[HunterSolution] = []
        for root in sorted(roots, key=abs, reverse=True):
            try:
                solutions.append(self.assemble_profile(root, strict=False))
            except (StiffnessFailure, *_SKIPPED) as exc:
                self._debug(f"assembly failed at eps={root:.12e}: {exc}")
                self.failures.append((root, f"{type(exc).__name__}: {exc}"))
        return solutions

    def _glue_check(self, ts: TaylorSolution, trajectory: IntegrationResult, y: float) -> float:
        series_state, _ = evaluate(ts, y)
        expected = series_state.as_array()
        actual = _rho_u(trajectory, y)
        return float(np.linalg.norm(actual - expected) / np.linalg.norm(expected))

    def assemble_profile(
        self, eps_root: float, *, tol: Optional[float] = None, strict: bool = True
    ) -> HunterSolution:
        """Glue inward trajectory, sonic series band and outward trajectory into one profile.

        A series/trajectory mismatch raises `GlueMismatch`, or becomes a flag
        when `strict` is off.
        """

        tol = self.config.tol if tol is None else tol
        params = self.params
        sp, ts = self._launch(eps_root)
        inner_start = sp.y_star - self.delta
        outer_start = sp.y_star + self.delta
        inner_state, _ = evaluate(ts, inner_start)
        outer_state, _ = evaluate(ts, outer_start)
        inward = self._trajectory(inner_start, inner_state, self.y_min, tol, core_stop=True)
        outward = self._trajectory(outer_start, outer_state, self.y_max, tol)

        flags: List[str] = []
        for trajectory, y in ((inward, sp.y_star - 2 * self.delta), (outward, sp.y_star + 2 * self.delta)):
            mismatch = self._glue_check(ts, trajectory, y)
            if mismatch > GLUE_RTOL:
                message = f"series and trajectory differ by {mismatch:.3e} at y={y:.6g}"
                if strict:
                    raise GlueMismatch(message)
                flags.append(f"GlueMismatch: {message}")

        profile = self._sample_profile(ts, sp, inward, outward)
        if inward.halted_by not in (None, EventKind.STOP_CONDITION):
            flags.append(f"inward trajectory stopped by {inward.halted_by.value} at y={inward.y_end:.6g}")
        if outward.halted_by is not None:
            flags.append(f"outward trajectory stopped by {outward.halted_by.value} at y={outward.y_end:.6g}")

        try:
            crossings = count_farfield_crossings(params, profile)
        except AmbiguousCrossing as exc:
            flags.append(str(exc))
            crossings = count_farfield_crossings(params, profile, validate=False)

        sonic_count, sonic_locations = count_sonic_points(profile)
        if sonic_count != 1:
            flags.append(f"{sonic_count} sonic points at {sonic_locations}")
        if not 0.0 < sp.y_star < 2.0 * params.y_f:
            flags.append(f"sonic point y*={sp.y_star:.6g} outside (0, 2 y_f)")
        if np.any(profile.rho <= 0):
            flags.append("density not strictly positive")

        d = profile.discriminant()
        inside = profile.y < sp.y_star - self.delta
        outside = profile.y > sp.y_star + self.delta
        if np.any(d[inside] >= 0) or np.any(d[outside] <= 0):
            flags.append("sonic discriminant has the wrong sign away from y*")

        exterior = profile.y >= sp.y_star
        if np.any(profile.du[exterior] + (2.0 - params.gamma) <= 0):
            flags.append("(u + (2-gamma) y)' not positive on the exterior")

        far = profile.y >= params.y_f
        density_bound = float(np.max(profile.p()[far])) if np.any(far) else math.nan
        velocity_bound = (
            float(np.max(profile.y[far] ** ((params.gamma - 1.0) / (2.0 - params.gamma)) * np.abs(profile.u[far])))
            if np.any(far)
            else math.nan
        )
        if not (math.isfinite(density_bound) and math.isfinite(velocity_bound)):
            flags.append("far-field bounds are not finite")
        edge = float(profile.p()[-1])
        if abs(edge / params.k - 1.0) > FARFIELD_RTOL:
            flags.append(f"y^m rho at Y_max is {edge / params.k:.4f} k")

        rho_center = _extrapolate_center(profile)
        lambda_est = rho_center ** (-(2.0 - params.gamma) / 2.0)
        deviation: Optional[float] = None
        if self.lane_emden is not None:
            try:
                _, deviation = best_fit_interior(params, self.lane_emden, profile, lambda_est)
            except DomainError as exc:
                self._debug(f"interior comparison skipped: {exc}")

        shot = _diagnostics(eps_root, sp, inward, self.y_min)
        solution = HunterSolution(
            index=crossings - 1,
            eps=eps_root,
            profile=profile,
            crossings=crossings,
            y_star=sp.y_star,
            sonic_points=sonic_count,
            rho_center=rho_center,
            lambda_est=lambda_est,
            density_bound=density_bound,
            velocity_bound=velocity_bound,
            shot=shot,
            canonical=eps_root > 0,
            interior_deviation=deviation,
            flags=flags,
        )
        self._debug(
            f"assembled eps={eps_root:.6e}: crossings={crossings}, sonic={sonic_count}, flags={len(flags)}"
        )
        return solution

    def _sample_profile(
        self,
        ts: TaylorSolution,
        sp: SonicPointData,
        inward: IntegrationResult,
        outward: IntegrationResult,
    ) -> Profile:
        inner_y = _log_grid(inward.y_end, sp.y_star - self.delta)
        band_y = np.linspace(sp.y_star - self.delta, sp.y_star + self.delta, BAND_SAMPLES)[1:-1]
        outer_y = _log_grid(sp.y_star + self.delta, outward.y_end)

        field = rho_u_field(self.params)
        pieces = []
        for y_values, trajectory in ((inner_y, inward), (outer_y, outward)):
            states = _rho_u(trajectory, y_values).T
            slopes = np.array([field(float(y), x) for y, x in zip(y_values, states)])
            pieces.append((y_values, states, slopes))

        band_states = []
        band_slopes = []
        for y in band_y:
            state, slope = evaluate(ts, float(y))
            band_states.append(state.as_array())
            band_slopes.append(slope)
        pieces.insert(1, (band_y, np.array(band_states), np.array(band_slopes)))

        y = np.concatenate([piece[0] for piece in pieces])
        states = np.concatenate([piece[1] for piece in pieces])
        slopes = np.concatenate([piece[2] for piece in pieces])
        return Profile(
            params=self.params,
            y=y,
            rho=states[:, 0],
            u=states[:, 1],
            drho=slopes[:, 0],
            du=slopes[:, 1],
        )


def _shot_task(task: Tuple[GammaParams, RunConfig, float]) -> ShotOutcome:
    params, config, eps = task
    return HunterShooter(params, config=config, workers=1)._shot_outcome(eps)


def _rho_u(trajectory: IntegrationResult, y: np.ndarray | float) -> np.ndarray:
    """(ρ̃, ũ) on a trajectory integrated in (ln ρ̃, ũ/y)."""

    x = np.asarray(trajectory.state_at(y), dtype=float)
    return np.array([np.exp(x[0]), x[1] * y])


def _diagnostics(eps: float, sp: SonicPointData, result: IntegrationResult, y_min: float) -> ShotDiagnostics:
    y_end = result.y_end
    terminal = float(result.final[1]) - ORIGIN_SLOPE
    if result.halted_by is EventKind.STOP_CONDITION:
        reached = True
    else:
        reached = result.halted_by is None and y_end <= y_min * (1.0 + 1e-9)
    if reached:
        termination = TerminationKind.REACHED_YMIN
    else:
        termination = _TERMINATIONS.get(result.halted_by, TerminationKind.BLOWUP)
    return ShotDiagnostics(
        eps=eps,
        defect=terminal if reached else math.nan,
        termination=termination,
        terminal_defect=terminal,
        y_end=y_end,
        y_star=sp.y_star,
        steps=len(result.y) - 1,
    )


def _log_grid(lo: float, hi: float) -> np.ndarray:
    count = max(int(math.ceil(math.log10(hi / lo) * SAMPLES_PER_DECADE)), 2)
    return np.geomspace(lo, hi, count)


def _extrapolate_center(profile: Profile) -> float:
    """ρ̃(0) from the two innermost samples, assuming ρ̃ is even in y."""

    y0, y1 = profile.y[0], profile.y[1]
    r0, r1 = profile.rho[0], profile.rho[1]
    return float(r0 - y0**2 * (r1 - r0) / (y1**2 - y0**2))


def shoot_inward(params: GammaParams, eps: float, y_min: float, tol: float) -> ShotDiagnostics:
    return HunterShooter(params, config=RunConfig(gamma=params.gamma, tol=tol)).shoot_inward(eps, y_min=y_min)


def find_hunter(
    params: GammaParams,
    eps_lo: float,
    eps_hi: float,
    grid_density: int,
    y_min: float,
    tol: float,
) -> List[HunterSolution]:
    config = RunConfig(
        gamma=params.gamma,
        tol=tol,
        scan_lo=eps_lo,
        scan_hi=eps_hi,
        grid_per_decade=grid_density,
        ymin_factor=y_min / params.y_f,
    )
    return HunterShooter(params, config=config).find_hunter()


def assemble_profile(params: GammaParams, eps_root: float, y_min: float, y_max: float, tol: float) -> HunterSolution:
    config = RunConfig(
        gamma=params.gamma,
        tol=tol,
        ymin_factor=y_min / params.y_f,
        ymax_factor=y_max / params.y_f,
    )
    return HunterShooter(params, config=config).assemble_profile(eps_root)
