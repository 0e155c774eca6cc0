"""Value types for the self-similar unknowns and the γ-derived constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


@dataclass(slots=True, frozen=True)
class GammaParams:
    """All constants derived from the polytropic index γ."""

    gamma: float
    k: float
    y_f: float
    mu: float
    nu: float
    theta0: float

    @property
    def density_exponent(self) -> float:
        """Exponent m of the far-field decay ρ̃ = k·y^(−m), m = 2/(2−γ)."""
        return 2.0 / (2.0 - self.gamma)

    @property
    def coupling(self) -> float:
        """Gravitational coupling 4π/(4−3γ) of the local reduction."""
        return 4.0 * math.pi / (4.0 - 3.0 * self.gamma)

    @property
    def far_field_omega(self) -> float:
        return 2.0 - self.gamma


@dataclass(slots=True, frozen=True)
class State:
    """Self-similar density ρ̃ and velocity ũ at one point y."""

    rho: float
    u: float

    def as_array(self) -> np.ndarray:
        return np.array([self.rho, self.u], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "State":
        return cls(rho=float(values[0]), u=float(values[1]))


@dataclass(slots=True, frozen=True)
class PWState:
    """Exterior variables p̃ = y^(2/(2−γ))·ρ̃ and ω̃ = ũ/y + (2−γ)."""

    p: float
    w: float

    def as_array(self) -> np.ndarray:
        return np.array([self.p, self.w], dtype=float)

    @classmethod
    def from_array(cls, values: np.ndarray) -> "PWState":
        return cls(p=float(values[0]), w=float(values[1]))


@dataclass(slots=True, frozen=True)
class EnthalpyState:
    """Self-similar enthalpy w̃ = γ/(γ−1)·ρ̃^(γ−1) together with the velocity."""

    w_enth: float
    u: float


class ExplicitKind(str, Enum):
    """The two closed-form solutions of the self-similar system."""

    FRIEDMAN = "friedman"
    FAR_FIELD = "far_field"
