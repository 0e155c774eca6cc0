"""Shooting diagnostics, assembled profiles and Hunter-type solutions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from .state import GammaParams


class TerminationKind(str, Enum):
    """How an inward shot ended."""

    REACHED_YMIN = "ReachedYmin"
    DENSITY_FLOOR = "DensityFloor"
    BLOWUP = "Blowup"
    SONIC_COLLISION = "SonicCollision"
    STIFF = "Stiff"


@dataclass(slots=True, frozen=True)
class ShotDiagnostics:
    """Outcome of a single inward shot from the sonic point."""

    eps: float
    defect: float
    termination: TerminationKind
    terminal_defect: float
    y_end: float
    y_star: float
    steps: int

    @property
    def reached_ymin(self) -> bool:
        return self.termination is TerminationKind.REACHED_YMIN

    @property
    def value(self) -> float:
        """Defect for completed shots, terminal defect for early terminations."""
        return self.defect if self.reached_ymin else self.terminal_defect

    @property
    def sign(self) -> int:
        """Sign of `value` used by the ε scan."""
        value = self.value
        if not math.isfinite(value) or value == 0.0:
            return 0
        return 1 if value > 0 else -1


@dataclass(slots=True)
class Profile:
    """Samples of (ρ̃, ũ) and their y-derivatives on a strictly increasing grid."""

    params: GammaParams
    y: np.ndarray
    rho: np.ndarray
    u: np.ndarray
    drho: np.ndarray
    du: np.ndarray

    def p(self) -> np.ndarray:
        return self.y ** self.params.density_exponent * self.rho

    def w(self) -> np.ndarray:
        return self.u / self.y + (2.0 - self.params.gamma)

    def discriminant(self) -> np.ndarray:
        gamma = self.params.gamma
        return (self.u + (2.0 - gamma) * self.y) ** 2 - gamma * self.rho ** (gamma - 1.0)

    def columns(self) -> Dict[str, np.ndarray]:
        return {
            "y": self.y,
            "rho": self.rho,
            "u": self.u,
            "p": self.p(),
            "w": self.w(),
            "D": self.discriminant(),
        }


@dataclass(slots=True)
class HunterSolution:
    """A refined defect root with its global profile and structural diagnostics."""

    index: int
    eps: float
    profile: Profile
    crossings: int
    y_star: float
    sonic_points: int
    rho_center: float
    lambda_est: float
    density_bound: float
    velocity_bound: float
    shot: ShotDiagnostics
    canonical: bool = True
    label: str = "Hunter-type candidate"
    interior_deviation: Optional[float] = None
    flags: List[str] = field(default_factory=list)

    @property
    def is_clean(self) -> bool:
        return not self.flags

    def summary(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "eps": self.eps,
            "y_star": self.y_star,
            "crossings": self.crossings,
            "sonic_points": self.sonic_points,
            "rho_center": self.rho_center,
            "lambda_est": self.lambda_est,
            "density_bound": self.density_bound,
            "velocity_bound": self.velocity_bound,
            "defect": self.shot.defect,
            "termination": self.shot.termination.value,
            "canonical": self.canonical,
            "label": self.label,
            "interior_deviation": self.interior_deviation,
            "flags": list(self.flags),
        }
