"""Sonic-point data and normal-form parameters."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(slots=True, frozen=True)
class SonicPointData:
    """Larson-Penston-Hunter Taylor data at the sonic point for one ε."""

    eps: float
    omega0: float
    p0: float
    y_star: float
    rho0: float
    u0: float
    R: float
    W: float
    rho1: float
    u1: float
    p1: float
    w1: float


@dataclass(slots=True, frozen=True)
class NormalFormParams:
    """Characteristic parameters (a, b, c, d), the selected root U and κ."""

    a: float
    b: float
    c: float
    d: float
    U: float
    kappa: float

    @property
    def quadratic_residual(self) -> float:
        return (self.a + self.b * self.U) * self.U + self.c + self.d * self.U

    @property
    def is_resonant(self) -> bool:
        """True when κ is a negative integer ≤ −2."""
        nearest = round(self.kappa)
        return nearest <= -2 and math.isclose(self.kappa, nearest, rel_tol=0.0, abs_tol=1e-12)

    def solvability_factor(self, order: int) -> float:
        """(a+bU)·k + (d+bU); zero exactly when order k = −κ."""
        return (self.a + self.b * self.U) * order + (self.d + self.b * self.U)
