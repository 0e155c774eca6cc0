"""Parsing utilities for flat key=value run configurations."""

from .config import load_run_config, parse_run_config

__all__ = ["load_run_config", "parse_run_config"]
