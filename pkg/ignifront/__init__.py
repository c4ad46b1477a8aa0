"""Traveling-front solver for the free-interface autoignition model."""

from __future__ import annotations

from ignifront.exceptions import IgnifrontError, NumericalError, ParameterError
from ignifront.front_solver import eval_front, solve_front, verify_front
from ignifront.model import validate_params

__all__ = [
    "IgnifrontError",
    "NumericalError",
    "ParameterError",
    "eval_front",
    "solve_front",
    "validate_params",
    "verify_front",
]
