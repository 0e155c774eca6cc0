"""Exception hierarchy shared across the hunter-profiles package."""

from __future__ import annotations


class HunterProfilesError(RuntimeError):
    """Base class for every error raised by the package."""


class DomainError(HunterProfilesError, ValueError):
    """Raised when an argument lies outside the admissible range."""


class FitUnreliable(HunterProfilesError):
    """Raised when a least-squares fit leaves a residual above its threshold."""

    def __init__(self, message: str, *, relative_residual: float) -> None:
        super().__init__(message)
        self.relative_residual = relative_residual


class ConfigError(HunterProfilesError, ValueError):
    """Raised when a run configuration cannot be parsed or validated."""
