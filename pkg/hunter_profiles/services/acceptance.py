"""Acceptance checks run by `hunter-profiles verify`."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from scipy.special import binom

from ..analysis.laneemden import solve_laneemden, ustar
from ..analysis.linear import hom_solution, linear_residual, window_samples
from ..analysis.series import ResonantOrder, model_residual, solve_singular_taylor, taylor_at_sonic
from ..analysis.sonic import characteristic_params_at_sonic, solve_sonic
from ..core.params import derive_params, explicit_derivative, explicit_solution, residue_matrix
from ..core.system import residual
from ..models import ExplicitKind, GammaParams, HunterSolution, RunConfig
from ..numerics.fitting import phase_distance
from .shooting import HunterShooter, root_spacing_report

ShooterFactory = Callable[[GammaParams, RunConfig], HunterShooter]


@dataclass(slots=True)
class CheckResult:
    """One named comparison of a computed value against its target."""

    name: str
    gamma: Optional[float]
    value: float
    target: float
    tolerance: float
    passed: bool
    detail: str = ""


@dataclass(slots=True)
class AcceptanceReport:
    gammas: List[float]
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gammas": list(self.gammas),
            "passed": self.passed,
            "checks": [asdict(check) for check in self.checks],
        }


class AcceptanceSuite:
    """Runs the closed-form, series, Lane-Emden, linear and shooting checks."""

    def __init__(
        self,
        config: RunConfig,
        *,
        include_shooting: bool = True,
        shooter_factory: Optional[ShooterFactory] = None,
        debug_logger: Optional[Callable[[str], None]] = None,
    ) -> None:
        self.config = config
        self.include_shooting = include_shooting
        self._shooter_factory = shooter_factory or self._default_shooter
        self._debug_logger = debug_logger
        self._report = AcceptanceReport(gammas=list(config.verify_gammas))

    @property
    def report(self) -> AcceptanceReport:
        return self._report

    def _debug(self, message: str) -> None:
        if self._debug_logger:
            self._debug_logger(message)

    def _default_shooter(self, params: GammaParams, config: RunConfig) -> HunterShooter:
        return HunterShooter(params, config=config, debug_logger=self._debug_logger)

    def _record(
        self,
        name: str,
        gamma: Optional[float],
        value: float,
        target: float,
        tolerance: float,
        *,
        relative: bool = False,
        detail: str = "",
    ) -> CheckResult:
        error = abs(value - target)
        if relative and target != 0:
            error /= abs(target)
        passed = math.isfinite(value) and error <= tolerance
        check = CheckResult(name, gamma, float(value), float(target), tolerance, passed, detail)
        self._report.checks.append(check)
        self._debug(f"{'ok  ' if passed else 'FAIL'} {name} (gamma={gamma}): {value:.12g} vs {target:.12g}")
        return check

    def _flag(self, name: str, gamma: Optional[float], passed: bool, detail: str = "") -> None:
        value = 1.0 if passed else 0.0
        self._report.checks.append(CheckResult(name, gamma, value, 1.0, 0.0, passed, detail))
        self._debug(f"{'ok  ' if passed else 'FAIL'} {name} (gamma={gamma}) {detail}")

    def _guarded(self, name: str, gamma: Optional[float], check: Callable[[], None]) -> None:
        try:
            check()
        except Exception as exc:
            self._flag(name, gamma, False, f"{type(exc).__name__}: {exc}")

    def run(self) -> AcceptanceReport:
        self._guarded("constant_identities", None, self.check_constant_identities)
        self._guarded("isothermal_limit", None, self.check_isothermal_limit)
        for gamma in self.config.verify_gammas:
            params = derive_params(gamma)
            self._guarded("explicit_residuals", gamma, lambda: self.check_explicit_solutions(params))
            self._guarded("sonic_far_field", gamma, lambda: self.check_sonic_far_field(params))
            self._guarded("sonic_eps_slopes", gamma, lambda: self.check_eps_slopes(params))
            self._guarded("series_launcher", gamma, lambda: self.check_series(params))
            self._guarded("lane_emden", gamma, lambda: self.check_lane_emden(params))
            self._guarded("linear", gamma, lambda: self.check_linear(params))
        if self.include_shooting:
            params = derive_params(self.config.gamma)
            self._guarded("hunter_enumeration", params.gamma, lambda: self.check_hunter(params))
        return self._report

    def check_constant_identities(self) -> None:
        worst = [0.0, 0.0, 0.0]
        for gamma in np.linspace(1.0, 1.2, 202)[1:-1]:
            p = derive_params(float(gamma))
            m = p.density_exponent
            worst[0] = max(worst[0], abs(p.k * p.y_f ** (-m) - (4 - 3 * gamma) / (2 * math.pi)))
            lhs = gamma * p.k ** (gamma - 2.0)
            worst[1] = max(worst[1], abs(lhs - (2 - gamma) ** 2 * p.y_f**m / p.k) / lhs)
            worst[2] = max(worst[2], abs(math.sin(p.theta0) + p.nu * math.sqrt(2 - gamma) / 2))
        for label, value in zip(("k_yf", "sound_speed", "theta0"), worst):
            self._record(f"constant_identity_{label}", None, value, 0.0, 1e-12)

    def check_isothermal_limit(self) -> None:
        p = derive_params(1.0)
        self._record("isothermal_mu", 1.0, p.mu, 0.5, 1e-14)
        self._record("isothermal_nu", 1.0, p.nu, math.sqrt(7.0) / 2.0, 1e-14)
        worst = 0.0
        for gamma in np.linspace(1.0, 1.2, 41)[:-1]:
            q = derive_params(float(gamma))
            _, eigenvalues = residue_matrix(q)
            expected = np.array([-q.mu - 1j * q.nu, -q.mu + 1j * q.nu])
            worst = max(worst, float(np.max(np.abs(eigenvalues - expected))))
        self._record("residue_eigenvalues", None, worst, 0.0, 1e-10)

    def check_explicit_solutions(self, params: GammaParams) -> None:
        for kind in ExplicitKind:
            worst = 0.0
            for y in np.linspace(0.05, 5.0, 50):
                state = explicit_solution(params, kind, float(y))
                slope = explicit_derivative(params, kind, float(y))
                r = residual(params, float(y), state, slope)
                worst = max(worst, math.hypot(*r))
            self._record(f"explicit_residual_{kind.value}", params.gamma, worst, 0.0, 1e-10)

    def check_sonic_far_field(self, params: GammaParams) -> None:
        gamma = params.gamma
        sp = solve_sonic(params, 0.0)
        nf = characteristic_params_at_sonic(params, sp)
        self._record("sonic_omega0", gamma, sp.omega0, 2 - gamma, 1e-12)
        self._record("sonic_p0", gamma, sp.p0, params.k, 1e-12, relative=True)
        self._record("sonic_y_star", gamma, sp.y_star, params.y_f, 1e-12, relative=True)
        self._record("sonic_R", gamma, sp.R, -params.density_exponent, 1e-10)
        self._record("sonic_W", gamma, sp.W, 0.0, 1e-10)
        self._record("sonic_a_plus_bU", gamma, nf.a + nf.b * nf.U, 1 / (2 * (2 - gamma) * params.y_f), 1e-10)
        self._record("sonic_kappa", gamma, nf.kappa, 2.5 * (gamma - 1), 1e-10)

    def check_eps_slopes(self, params: GammaParams) -> None:
        gamma, h = params.gamma, 1e-4
        plus, minus = solve_sonic(params, h), solve_sonic(params, -h)

        def slope(name: str) -> float:
            return (getattr(plus, name) - getattr(minus, name)) / (2 * h)

        w_slope = 2 * (7 - 3 * gamma) * (gamma - 1) / (5 * gamma - 3)
        targets = {
            "omega0": -(2 - gamma),
            "p0": (3 * gamma - 1) * params.k / (2 * (2 - gamma)),
            "y_star": (3 * gamma**2 - 8 * gamma + 9) * params.y_f / 4,
            "R": (-9 * gamma**2 + 9 * gamma + 2) / ((5 * gamma - 3) * (2 - gamma)),
            "W": w_slope,
        }
        for name, target in targets.items():
            self._record(f"eps_slope_{name}", gamma, slope(name), target, 1e-5, relative=True)

    def check_series(self, params: GammaParams) -> None:
        gamma = params.gamma
        order = 10
        ts = taylor_at_sonic(params, solve_sonic(params, 0.0), order)
        m = params.density_exponent
        n = np.arange(order + 1)
        expected = params.k * binom(-m, n) * params.y_f ** (-m - n)
        scale = float(np.max(np.abs(expected)))
        error = float(np.max(np.abs(ts.coeffs_rho - expected))) / scale
        error = max(error, float(np.max(np.abs(ts.coeffs_u))) / scale)
        self._record("series_far_field_reexpansion", gamma, error, 0.0, 1e-9)
        shifted = taylor_at_sonic(params, solve_sonic(params, 0.05), order)
        self._record("series_residual_eps_0.05", gamma, float(np.max(shifted.residual_norms)), 0.0, 1e-10)
        try:
            solve_singular_taylor(model_residual(-2.0), 0.0, (1.0, 0.0), (0.0, 1.0), 4)
        except ResonantOrder as exc:
            self._record("series_resonant_order", gamma, float(exc.order), 2.0, 0.0)
        else:
            self._flag("series_resonant_order", gamma, False, "kappa=-2 model system solved past order 2")

    def check_lane_emden(self, params: GammaParams) -> None:
        gamma = params.gamma
        le = solve_laneemden(params, self.config.le_ymax)
        tail = le.tail
        self._record("laneemden_Q0", gamma, float(le.evaluate(0.0)[0][0]), gamma / (gamma - 1), 0.0)
        h = 1e-4
        slope = float(ustar(params, le, np.array([h]))[0]) / h
        self._record("laneemden_ustar_slope", gamma, slope, -2.0 / 3.0, 1e-6)
        self._record(
            "laneemden_density_exponent", gamma, tail.density_exponent, -params.density_exponent, 0.01, relative=True
        )
        if tail.free is not None:
            self._record("laneemden_tail_frequency", gamma, tail.free.frequency, params.nu, 0.01, relative=True)
        else:
            self._flag("laneemden_tail_frequency", gamma, False, "free-frequency fit did not converge")
        offset = phase_distance(tail.phase_offset, params.theta0)
        self._record("laneemden_ustar_phase", gamma, offset / (2 * math.pi), 0.0, 0.02)

    def check_linear(self, params: GammaParams) -> None:
        gamma, k, y_f = params.gamma, params.k, params.y_f
        hom = hom_solution(params, constants=True, tol=min(self.config.tol, 1e-11))
        p, w, dp, dw = hom.evaluate(y_f)
        self._record("hom_p", gamma, p, (3 * gamma - 1) * k / (2 * (2 - gamma)), 1e-8, relative=True)
        self._record("hom_omega", gamma, w, -(2 - gamma), 1e-8, relative=True)
        self._record(
            "hom_dp", gamma, dp, (-9 * gamma**2 + 9 * gamma + 2) / ((5 * gamma - 3) * (2 - gamma)) * k / y_f,
            1e-8, relative=True,
        )
        self._record(
            "hom_domega", gamma, dw, 2 * (gamma - 1) * (7 - 3 * gamma) / (5 * gamma - 3) / y_f, 1e-8, relative=True
        )
        worst = 0.0
        for z in window_samples(hom):
            values = hom.evaluate(float(z))
            worst = max(worst, linear_residual(params, float(z), values[:2], values[2:]))
        self._record("hom_linear_residual", gamma, worst, 0.0, 1e-8)
        constants = hom.constants
        self._flag("hom_c1_positive", gamma, constants.c1 > 0, f"c1={constants.c1:.6g}")
        offset = phase_distance(constants.phase_offset, params.theta0)
        self._record("hom_phase_offset", gamma, offset / (2 * math.pi), 0.0, 0.02)

    def check_hunter(self, params: GammaParams) -> None:
        gamma = params.gamma
        shooter = self._shooter_factory(params, self.config)
        solutions = shooter.find_hunter()
        canonical = [s for s in solutions if s.canonical]
        self._flag("hunter_root_count", gamma, len(canonical) >= 3, f"{len(canonical)} roots")
        for solution in canonical:
            self._check_solution(params, solution)
        ordered = sorted(canonical, key=lambda s: s.eps, reverse=True)
        counts = [s.crossings for s in ordered]
        consecutive = all(b - a == 1 for a, b in zip(counts[:-1], counts[1:]))
        self._flag("hunter_crossings_consecutive", gamma, consecutive, f"crossings={counts}")
        indices = [s.index for s in ordered[:3]]
        self._flag("hunter_leading_indices", gamma, indices == [1, 2, 3], f"indices={indices}")
        self._flag("hunter_assembly", gamma, not shooter.failures, f"failed roots: {shooter.failures}")
        if len(canonical) >= 2:
            spacing = root_spacing_report(canonical, params)
            self._record(
                "hunter_root_spacing", gamma, spacing.slope, spacing.predicted_slope, 0.15, relative=True
            )

    def _check_solution(self, params: GammaParams, solution: HunterSolution) -> None:
        gamma = params.gamma
        tag = f"eps={solution.eps:.6e}"
        self._flag("hunter_single_sonic_point", gamma, solution.sonic_points == 1, tag)
        self._flag("hunter_sonic_location", gamma, 0 < solution.y_star < 2 * params.y_f, tag)
        self._flag("hunter_density_positive", gamma, bool(np.all(solution.profile.rho > 0)), tag)
        exterior = solution.profile.y >= solution.y_star
        monotone = bool(np.all(solution.profile.du[exterior] + (2 - gamma) > 0))
        self._flag("hunter_exterior_monotone", gamma, monotone, tag)
        bounds = math.isfinite(solution.density_bound) and math.isfinite(solution.velocity_bound)
        self._flag(
            "hunter_pointwise_bounds",
            gamma,
            bounds,
            f"{tag} density_bound={solution.density_bound:.6g} velocity_bound={solution.velocity_bound:.6g}",
        )
