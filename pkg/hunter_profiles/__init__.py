"""Self-similar Hunter-type collapse profiles of the polytropic Euler-Poisson system."""

from .analysis import hom_solution, solve_laneemden, solve_sonic, taylor_at_origin, taylor_at_sonic
from .core import derive_params, explicit_solution
from .errors import ConfigError, DomainError, FitUnreliable, HunterProfilesError
from .models import GammaParams, HunterSolution, Profile, RunConfig, SonicPointData, State
from .services import AcceptanceSuite, HunterShooter, assemble_profile, find_hunter, shoot_inward

__version__ = "0.1.0"

__all__ = [
    "AcceptanceSuite",
    "ConfigError",
    "DomainError",
    "FitUnreliable",
    "GammaParams",
    "HunterProfilesError",
    "HunterShooter",
    "HunterSolution",
    "Profile",
    "RunConfig",
    "SonicPointData",
    "State",
    "assemble_profile",
    "derive_params",
    "explicit_solution",
    "find_hunter",
    "hom_solution",
    "shoot_inward",
    "solve_laneemden",
    "solve_sonic",
    "taylor_at_origin",
    "taylor_at_sonic",
]
