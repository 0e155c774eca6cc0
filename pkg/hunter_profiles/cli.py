"""Command-line interface for computing Hunter-type self-similar profiles."""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import asdict, replace
from typing import Any, Callable, Dict, List, Sequence, Tuple

import numpy as np

from .analysis.laneemden import PositivityViolation, solve_laneemden, ustar
from .analysis.linear import ConvergenceFailure, OutsideWindow, extend_inward, hom_solution, window_samples
from .analysis.series import Resonant, TrustRegionExceeded
from .analysis.sonic import (
    BranchLost,
    DegenerateBranch,
    characteristic_params_at_sonic,
    r_quadratic_residual,
    solve_sonic,
)
from .core.params import derive_params, friedman_sonic_point
from .errors import ConfigError, DomainError, FitUnreliable, HunterProfilesError
from .exporters import OutputError, open_output, write_csv, write_json
from .models import GammaParams, HunterSolution, RunConfig
from .numerics.integrate import StiffnessFailure
from .parsers import load_run_config
from .services.acceptance import AcceptanceSuite
from .services.shooting import AmbiguousCrossing, GlueMismatch, HunterShooter, root_spacing_report

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL = 3
EXIT_OUTPUT = 4

NUMERICAL_ERRORS = (
    BranchLost,
    DegenerateBranch,
    Resonant,
    TrustRegionExceeded,
    StiffnessFailure,
    PositivityViolation,
    ConvergenceFailure,
    OutsideWindow,
    FitUnreliable,
    GlueMismatch,
    AmbiguousCrossing,
)

EXIT_CODES_HELP = """exit codes:
  0  success
  1  verify found a failing check
  2  invalid input (usage error, gamma out of range, malformed config)
  3  numerical failure (lost sonic branch, resonance, stiffness, failed fit, ...)
  4  output file could not be written
"""

# flag name -> RunConfig field
_OVERRIDES = {
    "gamma": "gamma",
    "eps": "eps",
    "order": "order",
    "tol": "tol",
    "tol_sonic": "tol_sonic",
    "delta": "delta_factor",
    "ymin": "ymin_factor",
    "core_depth": "core_depth",
    "ymax": "ymax_factor",
    "scan_lo": "scan_lo",
    "scan_hi": "scan_hi",
    "grid_per_decade": "grid_per_decade",
    "le_ymax": "le_ymax",
    "out": "out",
    "format": "format",
}


def _debug_print(enabled: bool, message: str) -> None:
    if enabled:
        sys.stderr.write(f"[debug] {message}\n")


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Flat key=value run configuration file")
    common.add_argument("--gamma", type=float, help="Polytropic index in (1, 6/5) (default: 1.1)")
    common.add_argument("--eps", type=float, help="Sonic-point parameter for single-shot commands")
    common.add_argument("--order", type=int, help="Series order N at the sonic point (default: 10)")
    common.add_argument("--tol", type=float, help="Integrator relative tolerance (default: 1e-10)")
    common.add_argument("--tol-sonic", type=float, help="Sonic discriminant tolerance (default: 1e-9)")
    common.add_argument("--delta", type=float, help="Series launch offset as a multiple of y_f (default: 1e-3)")
    common.add_argument("--ymin", type=float, help="Inner endpoint as a multiple of y_f (default: 1e-50)")
    common.add_argument(
        "--core-depth", type=float, help="Inward shots stop once y/lambda falls below this (default: 1e-3)"
    )
    common.add_argument("--ymax", type=float, help="Outer endpoint as a multiple of y_f (default: 1e3)")
    common.add_argument("--scan-lo", type=float, help="Smallest |eps| of the scan (default: 1e-6)")
    common.add_argument("--scan-hi", type=float, help="Largest |eps| of the scan (default: 0.5)")
    common.add_argument("--grid-per-decade", type=int, help="Scan points per decade of eps (default: 40)")
    common.add_argument("--le-ymax", type=float, help="Outer radius of the Lane-Emden solve (default: 1e17)")
    common.add_argument("--out", help="Output path, '-' for stdout (default: -)")
    common.add_argument("--format", choices=("csv", "json"), help="Output format (default: json)")
    common.add_argument("--debug", action="store_true", help="Print debug progress information to stderr")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="hunter-profiles",
        description="Self-similar Hunter-type collapse profiles of the polytropic Euler-Poisson system",
        epilog=EXIT_CODES_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("params", parents=[common], help="Print gamma-derived constants and identity checks")
    commands.add_parser("sonic", parents=[common], help="Sonic-point data and normal-form parameters at --eps")
    shoot = commands.add_parser("shoot", parents=[common], help="Scan eps for defect roots and assemble profiles")
    shoot.add_argument("--negative", action="store_true", help="Scan negative eps instead")
    shoot.add_argument("--profiles-dir", help="Also write profile_<index>.csv files into this directory")
    commands.add_parser("profile", parents=[common], help="Assemble the global profile launched at --eps")
    commands.add_parser("laneemden", parents=[common], help="Lane-Emden profile, u* and tail constants")
    commands.add_parser("linear", parents=[common], help="Homogeneous exterior solution and (c1, d1)")
    verify = commands.add_parser("verify", parents=[common], help="Run the acceptance suite")
    verify.add_argument("--skip-shooting", action="store_true", help="Leave out the Hunter enumeration")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then --config, then explicit flags."""

    config = RunConfig()
    if args.config:
        config = load_run_config(args.config, base=config)
    overrides = {
        field_name: getattr(args, flag)
        for flag, field_name in _OVERRIDES.items()
        if getattr(args, flag, None) is not None
    }
    if getattr(args, "negative", False):
        overrides["negative"] = True
    return replace(config, **overrides)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    debug = args.debug
    _debug_print(debug, f"Arguments parsed: {args}")

    try:
        config = resolve_config(args).validate(allow_isothermal=args.command == "params")
        _debug_print(debug, f"Run configuration:\n{config.to_text().rstrip()}")
        handler = _COMMANDS[args.command]
        return handler(config, args, lambda msg: _debug_print(debug, msg))
    except (DomainError, ConfigError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID_INPUT
    except NUMERICAL_ERRORS as exc:
        sys.stderr.write(f"numerical failure ({type(exc).__name__}): {exc}\n")
        return EXIT_NUMERICAL
    except OutputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_OUTPUT
    except HunterProfilesError as exc:
        sys.stderr.write(f"numerical failure ({type(exc).__name__}): {exc}\n")
        return EXIT_NUMERICAL


Logger = Callable[[str], None]


def _emit_json(config: RunConfig, payload: Dict[str, Any]) -> None:
    with open_output(config.out) as stream:
        write_json(payload, stream)


def _emit_table(config: RunConfig, columns: Dict[str, Any], payload: Dict[str, Any]) -> None:
    with open_output(config.out) as stream:
        if config.format == "csv":
            write_csv(columns, stream)
        else:
            write_json(payload, stream)


def cmd_params(config: RunConfig, args: argparse.Namespace, log: Logger) -> int:
    params = derive_params(config.gamma)
    _emit_json(config, params_payload(params))
    return EXIT_OK


def params_payload(params: GammaParams) -> Dict[str, Any]:
    gamma, m = params.gamma, params.density_exponent
    payload: Dict[str, Any] = asdict(params)
    payload["density_exponent"] = m
    payload["identities"] = {
        "k_yf": params.k * params.y_f ** (-m) - (4 - 3 * gamma) / (2 * math.pi),
        "sound_speed": gamma * params.k ** (gamma - 2) - (2 - gamma) ** 2 * params.y_f**m / params.k,
        "theta0": math.sin(params.theta0) + params.nu * math.sqrt(2 - gamma) / 2,
    }
    if gamma > 1.0:
        payload["friedman_sonic_point"] = friedman_sonic_point(params)
    return payload


def cmd_sonic(config: RunConfig, args: argparse.Namespace, log: Logger) -> int:
    params = derive_params(config.gamma)
    sp = solve_sonic(params, config.eps)
    nf = characteristic_params_at_sonic(params, sp)
    log(f"sonic point y*={sp.y_star:.12g}, kappa={nf.kappa:.12g}")
    _emit_json(
        config,
        {
            "gamma": params.gamma,
            "sonic_point": asdict(sp),
            "normal_form": {**asdict(nf), "quadratic_residual": nf.quadratic_residual, "resonant": nf.is_resonant},
            "r_quadratic_residual": r_quadratic_residual(params, sp.omega0, sp.R),
        },
    )
    return EXIT_OK


def _shooter(config: RunConfig, log: Logger, *, lane_emden: bool = False) -> HunterShooter:
    params = derive_params(config.gamma)
    le = solve_laneemden(params, config.le_ymax, fit=False) if lane_emden else None
    return HunterShooter(params, config=config, lane_emden=le, debug_logger=log)


def solutions_payload(
    params: GammaParams, solutions: List[HunterSolution], failures: Sequence[Tuple[float, str]] = ()
) -> Dict[str, Any]:
    spacing = root_spacing_report(solutions, params)
    return {
        "gamma": params.gamma,
        "solutions": [solution.summary() for solution in solutions],
        "failed_roots": [{"eps": eps, "error": message} for eps, message in failures],
        "root_spacing": {
            "slope": spacing.slope,
            "predicted_slope": spacing.predicted_slope,
            "lambda_ratios": list(spacing.lambda_ratios),
            "predicted_ratio": spacing.predicted_ratio,
        },
    }


def cmd_shoot(config: RunConfig, args: argparse.Namespace, log: Logger) -> int:
    shooter = _shooter(config, log, lane_emden=True)
    solutions = shooter.find_hunter()
    log(f"found {len(solutions)} defect roots")
    payload = solutions_payload(shooter.params, solutions, shooter.failures)
    if config.format == "csv":
        keys = ("index", "eps", "y_star", "crossings", "sonic_points", "lambda_est", "density_bound", "velocity_bound")
        columns = {key: [float(s.summary()[key]) for s in solutions] for key in keys}
        with open_output(config.out) as stream:
            write_csv(columns, stream)
    else:
        _emit_json(config, payload)
    if args.profiles_dir:
        for solution in solutions:
            path = f"{args.profiles_dir.rstrip('/')}/profile_{solution.index}.csv"
            with open_output(path) as stream:
                write_csv(solution.profile.columns(), stream)
            log(f"wrote {path}")
    return EXIT_OK


def cmd_profile(config: RunConfig, args: argparse.Namespace, log: Logger) -> int:
    shooter = _shooter(config, log)
    solution = shooter.assemble_profile(config.eps)
    columns = solution.profile.columns()
    payload = {"summary": solution.summary(), "profile": columns}
    _emit_table(config, columns, payload)
    return EXIT_OK


def cmd_laneemden(config: RunConfig, args: argparse.Namespace, log: Logger) -> int:
    params = derive_params(config.gamma)
    le = solve_laneemden(params, config.le_ymax, min(config.tol, 1e-11))
    log(f"Lane-Emden solved on {le.y.size} points up to y={le.y_max:.3e}")
    columns = {"y": le.y, "Q": le.Q, "density": le.density(le.y), "ustar": ustar(params, le)}
    tail = le.tail
    payload = {
        "gamma": params.gamma,
        "y_max": le.y_max,
        "tail": {**asdict(tail), "phase_offset": tail.phase_offset, "theta0": params.theta0},
    }
    _emit_table(config, columns, payload)
    return EXIT_OK


def cmd_linear(config: RunConfig, args: argparse.Namespace, log: Logger) -> int:
    params = derive_params(config.gamma)
    hom = hom_solution(params, constants=True, tol=min(config.tol, 1e-11))
    extension = extend_inward(params, hom, tol=min(config.tol, 1e-11))
    inner = np.sort(extension.y)
    window = window_samples(hom)
    inner = inner[inner < window[0]]
    inner_values = np.asarray(extension.state_at(inner), dtype=float)
    window_values = np.array([hom.evaluate(float(z))[:2] for z in window]).T
    columns = {
        "z": np.concatenate([inner, window]),
        "p_hom": np.concatenate([inner_values[0], window_values[0]]),
        "w_hom": np.concatenate([inner_values[1], window_values[1]]),
    }
    constants = hom.constants
    p, w, dp, dw = hom.evaluate(params.y_f)
    payload = {
        "gamma": params.gamma,
        "taylor_at_y_f": {"p_hom": p, "w_hom": w, "dp_hom": dp, "dw_hom": dw},
        "constants": {**asdict(constants), "phase_offset": constants.phase_offset, "theta0": params.theta0},
        "window": list(hom.z_window),
    }
    _emit_table(config, columns, payload)
    return EXIT_OK


def cmd_verify(config: RunConfig, args: argparse.Namespace, log: Logger) -> int:
    suite = AcceptanceSuite(config, include_shooting=not args.skip_shooting, debug_logger=log)
    report = suite.run()
    _emit_json(config, {"config": config.to_text(), **report.to_dict()})
    for failure in report.failures:
        sys.stderr.write(f"FAILED {failure.name} (gamma={failure.gamma}): {failure.detail or failure.value}\n")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


_COMMANDS: Dict[str, Callable[[RunConfig, argparse.Namespace, Logger], int]] = {
    "params": cmd_params,
    "sonic": cmd_sonic,
    "shoot": cmd_shoot,
    "profile": cmd_profile,
    "laneemden": cmd_laneemden,
    "linear": cmd_linear,
    "verify": cmd_verify,
}


if __name__ == "__main__":
    raise SystemExit(main())
