"""Truncated power series, adaptive integration and log-periodic fits."""

from .fitting import FreeOscillationFit, OscillationFit, fit_log_oscillation, free_oscillation_fit
from .integrate import EventKind, IntegrationResult, RhsKind, StiffnessFailure, detect_sonic, integrate
from .power_series import TruncatedSeries

__all__ = [
    "EventKind",
    "FreeOscillationFit",
    "IntegrationResult",
    "OscillationFit",
    "RhsKind",
    "StiffnessFailure",
    "TruncatedSeries",
    "detect_sonic",
    "fit_log_oscillation",
    "free_oscillation_fit",
    "integrate",
]
