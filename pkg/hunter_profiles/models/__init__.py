"""Shared dataclasses for self-similar profile computations."""

from .config import RunConfig
from .solution import HunterSolution, Profile, ShotDiagnostics, TerminationKind
from .sonic import NormalFormParams, SonicPointData
from .state import EnthalpyState, ExplicitKind, GammaParams, PWState, State

__all__ = [
    "EnthalpyState",
    "ExplicitKind",
    "GammaParams",
    "HunterSolution",
    "NormalFormParams",
    "PWState",
    "Profile",
    "RunConfig",
    "ShotDiagnostics",
    "SonicPointData",
    "State",
    "TerminationKind",
]
