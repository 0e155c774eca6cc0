"""Shooting and acceptance services built on the analysis modules."""

from .acceptance import AcceptanceReport, AcceptanceSuite, CheckResult
from .shooting import (
    AmbiguousCrossing,
    GlueMismatch,
    HunterShooter,
    RootSpacingReport,
    assemble_profile,
    count_farfield_crossings,
    count_sonic_points,
    find_hunter,
    root_spacing_report,
    shoot_inward,
)

__all__ = [
    "AcceptanceReport",
    "AcceptanceSuite",
    "AmbiguousCrossing",
    "CheckResult",
    "GlueMismatch",
    "HunterShooter",
    "RootSpacingReport",
    "assemble_profile",
    "count_farfield_crossings",
    "count_sonic_points",
    "find_hunter",
    "root_spacing_report",
    "shoot_inward",
]
