from __future__ import annotations

import asyncio
from collections.abc import Coroutine, Iterable, Sequence
import csv
from enum import Enum
import logging
import math
import os
from pathlib import Path
import sys
from typing import Any, TypeVar, Union

import numpy as np
import orjson

T = TypeVar("T")

DEBUG_ENV = "IGNIFRONT_DEBUG"
OUTPUT_ENV = "IGNIFRONT_OUT"
FLOAT_FORMAT = ".17g"
JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS | orjson.OPT_SERIALIZE_NUMPY

_LOGGER = logging.getLogger(__name__)


def set_debug() -> None:
    """Sets ENV variable for IGNIFRONT_DEBUG to on (True)"""
    os.environ[DEBUG_ENV] = str(True)


def set_no_debug() -> None:
    """Sets ENV variable for IGNIFRONT_DEBUG to off (False)"""
    os.environ[DEBUG_ENV] = str(False)


def is_debug() -> bool:
    """Returns if debug ENV is on (True)"""
    return os.environ.get(DEBUG_ENV) == str(True)


def is_finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


def format_float(value: Union[float, int, np.floating[Any]]) -> str:
    """Formats a number with 17 significant digits (round-trips binary doubles)."""

    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), FLOAT_FORMAT)


def serialize_value(value: Any, levels: int = -1) -> Any:
    """Serializes data models, numpy values and enums into JSON-ready values"""

    if summary_dict := getattr(value, "summary_dict", None):
        value = summary_dict()

    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if levels != 0 and isinstance(value, dict):
        return {k: serialize_value(v, levels=levels - 1) for k, v in value.items()}
    if levels != 0 and isinstance(value, (list, tuple)):
        return [serialize_value(i, levels=levels - 1) for i in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, float) and not math.isfinite(value):
        return None

    return value


def dumps_json(data: Any) -> bytes:
    return orjson.dumps(serialize_value(data), option=JSON_OPTIONS)


def write_json(output_path: Path, data: Any) -> None:
    """Writes a JSON document with sorted keys (byte-identical for identical data)."""

    output_path.write_bytes(dumps_json(data) + b"\n")
    _LOGGER.debug("Wrote %s", output_path)


def write_csv(
    output_path: Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
) -> int:
    """Writes a CSV table, floats formatted with 17 significant digits.

    Returns the number of data rows written.
    """

    count = 0
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [
                    v if isinstance(v, str) else format_float(v)
                    for v in row
                ],
            )
            count += 1

    _LOGGER.debug("Wrote %s rows to %s", count, output_path)
    return count


def geometric_grid(start: float, stop: float, num: int) -> np.ndarray:
    """Ascending geometric grid whose last point is exactly `stop`."""

    grid = np.geomspace(start, stop, num)
    grid[-1] = stop
    return grid


def count_sign_changes(values: Sequence[float] | np.ndarray) -> int:
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def run_async(callback: Coroutine[Any, Any, T]) -> T:
    """Run async coroutine."""

    if sys.version_info >= (3, 11):
        return asyncio.run(callback)
    loop = asyncio.new_event_loop()
    try:
        return loop.run_until_complete(callback)
    finally:
        loop.close()
