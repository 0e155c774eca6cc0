"""CSV and JSON writers with a fixed, byte-stable layout."""

from __future__ import annotations

import contextlib
import json
import math
import sys
from dataclasses import asdict, is_dataclass
from enum import Enum
from pathlib import Path
from typing import IO, Any, Iterator, Mapping, Sequence

import numpy as np

from .errors import HunterProfilesError

SCHEMA_VERSION = 1


class OutputError(HunterProfilesError):
    """Raised when an output file cannot be written."""


def format_float(value: float) -> str:
    return format(float(value), ".17g")


def to_jsonable(value: Any) -> Any:
    """Dataclasses, enums and numpy values as plain JSON types; non-finite floats become None."""

    if is_dataclass(value) and not isinstance(value, type):
        return to_jsonable(asdict(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Mapping):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, np.ndarray):
        return [to_jsonable(item) for item in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        number = float(value)
        return number if math.isfinite(number) else None
    if callable(value):
        return None
    return value


def write_json(payload: Mapping[str, Any], stream: IO[str]) -> None:
    document = dict(to_jsonable(payload))
    document["schema_version"] = SCHEMA_VERSION
    json.dump(document, stream, indent=2, sort_keys=True, allow_nan=False)
    stream.write("\n")


def write_csv(columns: Mapping[str, Sequence[float]], stream: IO[str]) -> None:
    names = list(columns)
    arrays = [np.asarray(columns[name], dtype=float) for name in names]
    lengths = {array.size for array in arrays}
    if len(lengths) > 1:
        raise ValueError(f"CSV columns have different lengths: {sorted(lengths)}")
    stream.write(",".join(names) + "\n")
    for row in zip(*arrays):
        stream.write(",".join(format_float(value) for value in row) + "\n")


@contextlib.contextmanager
def open_output(path: str) -> Iterator[IO[str]]:
    """Yield stdout for '-', otherwise a text file opened for writing."""

    if path == "-":
        yield sys.stdout
        return
    try:
        target = Path(path)
        if target.parent and not target.parent.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
        handle = target.open("w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
    with handle:
        yield handle
