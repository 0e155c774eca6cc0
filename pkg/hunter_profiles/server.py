"""FastMCP server exposing self-similar collapse profile tools."""

from __future__ import annotations

from dataclasses import asdict
from typing import Annotated, Any, Dict

from fastmcp import FastMCP

from .analysis.laneemden import solve_laneemden
from .analysis.linear import hom_solution
from .analysis.sonic import characteristic_params_at_sonic, solve_sonic
from .core.params import derive_params, explicit_solution
from .errors import HunterProfilesError
from .exporters import to_jsonable
from .models import ExplicitKind
from .services.shooting import HunterShooter

app = FastMCP("hunter-profiles", version="0.1.0")


def _failure(exc: HunterProfilesError) -> Dict[str, Any]:
    return {"error": type(exc).__name__, "message": str(exc)}


@app.tool()
def gamma_params(
    gamma: Annotated[float, "Polytropic index in [1, 6/5)"],
) -> Dict[str, Any]:
    """Return k, y_f, mu, nu and theta0 for the given polytropic index."""

    try:
        params = derive_params(gamma)
    except HunterProfilesError as exc:
        return _failure(exc)
    payload = asdict(params)
    payload["density_exponent"] = params.density_exponent
    return to_jsonable(payload)


@app.tool()
def explicit_state(
    gamma: Annotated[float, "Polytropic index in [1, 6/5)"],
    kind: Annotated[str, "Explicit solution: 'friedman' or 'far_field'"],
    y: Annotated[float, "Self-similar radius"],
) -> Dict[str, Any]:
    """Evaluate the Friedman or far-field solution at one radius."""

    try:
        state = explicit_solution(derive_params(gamma), ExplicitKind(kind), y)
    except ValueError as exc:
        return {"error": type(exc).__name__, "message": str(exc)}
    return to_jsonable(state)


@app.tool()
def sonic_point(
    gamma: Annotated[float, "Polytropic index in (1, 6/5)"],
    eps: Annotated[float, "Sonic-point parameter"],
) -> Dict[str, Any]:
    """Sonic-point Taylor data and normal-form parameters on the Larson-Penston-Hunter branch."""

    try:
        params = derive_params(gamma)
        sp = solve_sonic(params, eps)
        nf = characteristic_params_at_sonic(params, sp)
    except HunterProfilesError as exc:
        return _failure(exc)
    return to_jsonable({"sonic_point": sp, "normal_form": nf, "resonant": nf.is_resonant})


@app.tool()
def shoot_once(
    gamma: Annotated[float, "Polytropic index in (1, 6/5)"],
    eps: Annotated[float, "Sonic-point parameter"],
) -> Dict[str, Any]:
    """Shoot inward from the sonic point and report the center defect u/y + 2/3."""

    try:
        shot = HunterShooter(derive_params(gamma)).shoot_inward(eps)
    except HunterProfilesError as exc:
        return _failure(exc)
    return to_jsonable(shot)


@app.tool()
def laneemden_tail(
    gamma: Annotated[float, "Polytropic index in (1, 6/5)"],
) -> Dict[str, Any]:
    """Solve the Lane-Emden interior and return its oscillatory tail constants."""

    try:
        params = derive_params(gamma)
        tail = solve_laneemden(params).tail
    except HunterProfilesError as exc:
        return _failure(exc)
    payload = asdict(tail)
    payload["phase_offset"] = tail.phase_offset
    payload["theta0"] = params.theta0
    return to_jsonable(payload)


@app.tool()
def homogeneous_solution(
    gamma: Annotated[float, "Polytropic index in (1, 6/5)"],
) -> Dict[str, Any]:
    """Return the asymptotic constants (c1, d1) of the exterior homogeneous solution."""

    try:
        params = derive_params(gamma)
        constants = hom_solution(params, constants=True).constants
    except HunterProfilesError as exc:
        return _failure(exc)
    payload = asdict(constants)
    payload["phase_offset"] = constants.phase_offset
    payload["theta0"] = params.theta0
    return to_jsonable(payload)


def run() -> None:
    """Entry point for `python -m hunter_profiles.server` or console script."""

    print("[hunter-profiles] Starting MCP server. Press Ctrl+C to stop.")
    app.run()


if __name__ == "__main__":
    run()
