from __future__ import annotations

import asyncio
import math
from pathlib import Path

import numpy as np
import orjson
import pytest

from ignifront.data import CurveKind, SeparatrixOptions
from ignifront.utils import (
    count_sign_changes,
    dumps_json,
    format_float,
    geometric_grid,
    is_debug,
    is_finite,
    run_async,
    serialize_value,
    set_debug,
    set_no_debug,
    write_csv,
    write_json,
)


@pytest.mark.parametrize(
    ("value", "expected"),
    [
        (0.1, "0.10000000000000001"),
        (1.0, "1"),
        (3, "3"),
        (np.int64(7), "7"),
        (np.float64(2.5), "2.5"),
        (1e-20, "9.9999999999999995e-21"),
    ],
)
def test_format_float(value: float, expected: str):
    assert format_float(value) == expected


def test_format_float_round_trips():
    for value in [math.pi, 1 / 3, 2.0**-1074, 1.7976931348623157e308]:
        assert float(format_float(value)) == value


def test_write_csv(tmp_path: Path):
    path = tmp_path / "table.csv"
    count = write_csv(path, ("side", "u", "v"), [("bottom", 0.2, 0.0), ("left", 0.2, 1 / 3)])

    assert count == 2
    assert path.read_text(encoding="utf-8") == (
        "side,u,v\nbottom,0.20000000000000001,0\nleft,0.20000000000000001,0.33333333333333331\n"
    )
    assert write_csv(tmp_path / "empty.csv", ("t", "x_ig"), []) == 0
    assert (tmp_path / "empty.csv").read_text(encoding="utf-8") == "t,x_ig\n"


def test_write_json_sorted(tmp_path: Path):
    path = tmp_path / "doc.json"
    write_json(path, {"b": np.float64(1.5), "a": np.array([1, 2]), "kind": CurveKind.PSI})

    raw = path.read_bytes()
    assert raw.endswith(b"\n")
    assert raw.index(b'"a"') < raw.index(b'"b"')
    assert orjson.loads(raw) == {"a": [1, 2], "b": 1.5, "kind": "psi"}


def test_serialize_value():
    assert serialize_value(np.float32(0.5)) == 0.5
    assert serialize_value(np.int32(4)) == 4
    assert serialize_value((1, np.float64(2.0))) == [1, 2.0]
    assert serialize_value(math.nan) is None
    assert serialize_value(math.inf) is None
    assert serialize_value(Path("out/front.json")) == "out/front.json"
    assert serialize_value({"nested": {"x": np.arange(2)}}) == {"nested": {"x": [0, 1]}}
    assert serialize_value({"nested": {"x": 1}}, levels=0) == {"nested": {"x": 1}}


def test_serialize_data_object():
    options = SeparatrixOptions(rtol=1e-9)
    data = serialize_value(options)
    assert data["rtol"] == 1e-9
    assert data["method"] == "auto"
    assert data["epsilon_seed"] is None
    assert orjson.loads(dumps_json(options)) == data


def test_geometric_grid():
    grid = geometric_grid(1e-3, 0.37, 50)
    assert len(grid) == 50
    assert grid[0] == pytest.approx(1e-3, rel=1e-15)
    assert grid[-1] == 0.37
    assert np.all(np.diff(grid) > 0)
    np.testing.assert_allclose(grid[1:] / grid[:-1], grid[1] / grid[0], rtol=1e-12)


@pytest.mark.parametrize(
    ("values", "expected"),
    [
        ([], 0),
        ([1.0, 2.0, 3.0], 0),
        ([-1.0, 2.0], 1),
        ([-1.0, 0.0, 2.0], 1),
        ([-1.0, 1.0, -1.0, 1.0], 3),
        ([0.0, 0.0], 0),
    ],
)
def test_count_sign_changes(values: list[float], expected: int):
    assert count_sign_changes(values) == expected


def test_is_finite():
    assert is_finite(1.0, -2.0, 0.0)
    assert not is_finite(1.0, math.nan)
    assert not is_finite(math.inf)


def test_debug_env():
    set_no_debug()
    assert not is_debug()
    set_debug()
    assert is_debug()


def test_run_async():
    async def answer() -> int:
        await asyncio.sleep(0)
        return 42

    assert run_async(answer()) == 42
