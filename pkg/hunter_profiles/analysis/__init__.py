"""Sonic-point branch, series launchers, Lane-Emden interior and exterior linearisation."""

from .laneemden import LaneEmdenSolution, PositivityViolation, TailFit, fit_tail, scale, solve_laneemden, ustar
from .linear import (
    ConvergenceFailure,
    HomConstants,
    HomSolution,
    HypergeometricArgs,
    OutsideWindow,
    extract_c1_d1,
    gauss_2f1_conjugate,
    hom_solution,
)
from .series import Resonant, ResonantOrder, TaylorSolution, TrustRegionExceeded, taylor_at_origin, taylor_at_sonic
from .sonic import BranchLost, DegenerateBranch, characteristic_params_at_sonic, origin_params, solve_sonic

__all__ = [
    "BranchLost",
    "ConvergenceFailure",
    "DegenerateBranch",
    "HomConstants",
    "HomSolution",
    "HypergeometricArgs",
    "LaneEmdenSolution",
    "OutsideWindow",
    "PositivityViolation",
    "Resonant",
    "ResonantOrder",
    "TailFit",
    "TaylorSolution",
    "TrustRegionExceeded",
    "characteristic_params_at_sonic",
    "extract_c1_d1",
    "fit_tail",
    "gauss_2f1_conjugate",
    "hom_solution",
    "origin_params",
    "scale",
    "solve_laneemden",
    "solve_sonic",
    "taylor_at_origin",
    "taylor_at_sonic",
    "ustar",
]
