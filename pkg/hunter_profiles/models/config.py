"""Run configuration shared by the CLI, the acceptance suite and the server."""

from __future__ import annotations

from dataclasses import dataclass, field, fields
from typing import Tuple

from ..errors import ConfigError

OUTPUT_FORMATS = ("csv", "json")


@dataclass(slots=True)
class RunConfig:
    """Every tunable of a run; serialises to a flat key=value file."""

    gamma: float = 1.1
    eps: float = 0.0
    tol: float = 1e-10
    tol_sonic: float = 1e-9
    order: int = 10
    delta_factor: float = 1e-3
    ymin_factor: float = 1e-50
    core_depth: float = 1e-3
    ymax_factor: float = 1e3
    scan_lo: float = 1e-6
    scan_hi: float = 0.5
    grid_per_decade: int = 40
    negative: bool = False
    le_ymax: float = 1e17
    out: str = "-"
    format: str = "json"
    verify_gammas: Tuple[float, ...] = field(default=(1.05, 1.1, 1.15))

    def validate(self, *, allow_isothermal: bool = False) -> "RunConfig":
        lower_ok = 1.0 <= self.gamma if allow_isothermal else 1.0 < self.gamma
        if not (lower_ok and self.gamma < 1.2):
            raise ConfigError(f"gamma={self.gamma!r} outside the admissible range (1, 6/5)")
        if self.tol <= 0 or self.tol_sonic <= 0:
            raise ConfigError("tolerances must be positive")
        if self.order < 2:
            raise ConfigError(f"order={self.order} must be at least 2")
        if not 0.0 < self.delta_factor < 0.1:
            raise ConfigError(f"delta_factor={self.delta_factor!r} must lie in (0, 0.1)")
        if not 0.0 < self.ymin_factor <= 0.1:
            raise ConfigError(f"ymin_factor={self.ymin_factor!r} must lie in (0, 0.1]")
        if not 0.0 < self.core_depth < 1.0:
            raise ConfigError(f"core_depth={self.core_depth!r} must lie in (0, 1)")
        if self.ymax_factor <= 1.0:
            raise ConfigError(f"ymax_factor={self.ymax_factor!r} must exceed 1")
        if not 0.0 < self.scan_lo < self.scan_hi:
            raise ConfigError("scan bounds must satisfy 0 < scan_lo < scan_hi")
        if self.grid_per_decade < 1:
            raise ConfigError("grid_per_decade must be at least 1")
        if self.le_ymax < 1e3:
            raise ConfigError("le_ymax must be at least 1e3")
        if self.format not in OUTPUT_FORMATS:
            raise ConfigError(f"format must be one of {', '.join(OUTPUT_FORMATS)}")
        if not self.verify_gammas:
            raise ConfigError("verify_gammas must list at least one gamma")
        return self

    def to_text(self) -> str:
        lines = []
        for entry in fields(self):
            lines.append(f"{entry.name}={_format_value(getattr(self, entry.name))}")
        return "\n".join(lines) + "\n"


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return ",".join(repr(float(item)) for item in value)
    return str(value)
