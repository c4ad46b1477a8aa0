from __future__ import annotations

from collections.abc import Callable
import enum
from typing import Any, Optional

from pydantic.v1.types import ConstrainedFloat, ConstrainedInt

ScalarFunction = Callable[[float], float]


class ValuesEnumMixin:
    _values: Optional[list[str]] = None
    _values_normalized: Optional[dict[str, str]] = None

    @classmethod
    def values(cls) -> list[str]:
        if cls._values is None:
            cls._values = [e.value for e in cls]  # type: ignore[attr-defined]
        return cls._values

    @classmethod
    def _missing_(cls, value: Any) -> Optional[Any]:
        if cls._values_normalized is None:
            cls._values_normalized = {e.value.lower(): e for e in cls}  # type: ignore[attr-defined]

        value_normal = value
        if isinstance(value, str):
            value_normal = value.lower()
        return cls._values_normalized.get(value_normal)


@enum.unique
class ReactionKind(str, ValuesEnumMixin, enum.Enum):
    QUARTIC = "quartic-radiative"
    CUSTOM = "custom"


@enum.unique
class CurveKind(str, ValuesEnumMixin, enum.Enum):
    PHI = "phi"
    PSI = "psi"


@enum.unique
class IntegratorMethod(str, ValuesEnumMixin, enum.Enum):
    AUTO = "auto"
    DOP853 = "DOP853"
    RADAU = "Radau"


@enum.unique
class SingularPointKind(str, ValuesEnumMixin, enum.Enum):
    SADDLE = "saddle"
    CENTER = "center"
    UNSTABLE_FOCUS = "unstable-focus"
    UNSTABLE_NODE = "unstable-node"


class PositiveFloat(ConstrainedFloat):
    gt = 0
    allow_inf_nan = False


class NonNegativeFloat(ConstrainedFloat):
    ge = 0
    allow_inf_nan = False


class FractionFloat(ConstrainedFloat):
    gt = 0
    le = 1
    allow_inf_nan = False


class GridSize(ConstrainedInt):
    ge = 2
