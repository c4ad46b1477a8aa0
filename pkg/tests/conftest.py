from __future__ import annotations

from collections.abc import Iterator
import math
from pathlib import Path

import numpy as np
import pytest

from ignifront.data import FrontSolution, ModelParams
from ignifront.front_solver import solve_front
from ignifront.model import quartic_theta_plus, validate_params
from ignifront.phase_plane import clear_cache
from ignifront.utils import set_debug, set_no_debug

STANDARD = {"q": 1.0, "h": 0.3, "theta_ig": 0.1, "theta_hl": 0.2}
NARROW = {"q": 1.0, "h": 0.3, "theta_ig": 0.2, "theta_hl": 0.25}

STANDARD_THETA_PLUS = 0.442798
STANDARD_V0_HL = 0.423814


def write_config(path: Path, values: dict[str, float | int], comment: str = "run") -> Path:
    lines = [f"# {comment}"]
    lines.extend(f"{key}={value!r}" for key, value in values.items())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def random_params(rng: np.random.Generator) -> ModelParams:
    """Draws a valid quartic parameter set with theta_hl well inside (theta_ig, theta_plus)."""

    q = float(rng.uniform(0.2, 5.0))
    h = float(rng.uniform(0.05, 2.0))
    theta_p = quartic_theta_plus(q, h)
    theta_hl = float(rng.uniform(0.2, 0.8)) * theta_p
    theta_ig = float(rng.uniform(0.2, 0.8)) * theta_hl
    return validate_params(q, h, theta_ig, theta_hl)


@pytest.fixture(autouse=True)
def _ensure_debug() -> Iterator[None]:
    set_debug()
    yield
    set_no_debug()


@pytest.fixture()
def standard() -> ModelParams:
    return validate_params(**STANDARD)


@pytest.fixture()
def narrow() -> ModelParams:
    return validate_params(**NARROW)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240517)


@pytest.fixture()
def param_sets(rng: np.random.Generator) -> list[ModelParams]:
    return [random_params(rng) for _ in range(25)]


@pytest.fixture(scope="session")
def standard_front() -> FrontSolution:
    clear_cache()
    return solve_front(validate_params(**STANDARD))


@pytest.fixture()
def standard_config(tmp_path: Path) -> Path:
    return write_config(tmp_path / "standard.cfg", dict(STANDARD), comment="standard parameters")


@pytest.fixture()
def narrow_config(tmp_path: Path) -> Path:
    return write_config(tmp_path / "narrow.cfg", dict(NARROW), comment="narrow preheat gap")


def rel_diff(a: float, b: float) -> float:
    return abs(a - b) / max(abs(b), math.ulp(1.0))
