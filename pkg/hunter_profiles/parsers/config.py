"""Parser for the flat key=value run-config format."""

from __future__ import annotations

from dataclasses import fields, replace
from pathlib import Path
from typing import Any, Dict, Iterable, Tuple

from ..errors import ConfigError
from ..models import RunConfig

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


def parse_run_config(raw_text: str, *, base: RunConfig | None = None) -> RunConfig:
    """Parse key=value lines on top of `base` (defaults when omitted)."""

    config = base or RunConfig()
    defaults = {entry.name: getattr(config, entry.name) for entry in fields(config)}
    updates: Dict[str, Any] = {}
    for number, key, value in _split_lines(raw_text):
        if key not in defaults:
            raise ConfigError(f"line {number}: unknown key {key!r}")
        updates[key] = _coerce(number, key, value, defaults[key])
    return replace(config, **updates)


def load_run_config(path: str | Path, *, base: RunConfig | None = None) -> RunConfig:
    file_path = Path(path)
    if not file_path.exists():
        raise ConfigError(f"config file not found: {file_path}")
    return parse_run_config(file_path.read_text(encoding="utf-8"), base=base)


def _split_lines(text: str) -> Iterable[Tuple[int, str, str]]:
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {number}: expected key=value, got {stripped!r}")
        key, value = stripped.split("=", 1)
        yield number, key.strip().replace("-", "_"), value.strip()


def _coerce(number: int, key: str, value: str, default: Any) -> Any:
    try:
        if isinstance(default, bool):
            lowered = value.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(value)
        if isinstance(default, int):
            return int(value)
        if isinstance(default, float):
            return float(value)
        if isinstance(default, tuple):
            return tuple(float(item) for item in value.split(",") if item.strip())
    except ValueError:
        raise ConfigError(f"line {number}: cannot parse {key}={value!r}") from None
    return value
