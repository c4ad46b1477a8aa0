from __future__ import annotations

from typing import Any, Optional

from pydantic.v1 import root_validator

from ignifront.data.base import FrontBaseObject
from ignifront.data.types import PositiveFloat, ReactionKind, ScalarFunction


class ReactionSpec(FrontBaseObject):
    """Restricted reaction term F on the neighborhood W of [theta_hl, theta_plus].

    The default is the quartic radiative law q - h((1+u)^4 - 1). A custom
    reaction brings its own handles for F and F' plus the interval W on
    which F has a unique zero theta_plus with F'(theta_plus) < 0.
    """

    kind: ReactionKind = ReactionKind.QUARTIC
    function: Optional[ScalarFunction] = None
    derivative: Optional[ScalarFunction] = None
    bracket: Optional[tuple[float, float]] = None
    quad_epsabs: PositiveFloat = 1e-13
    quad_epsrel: PositiveFloat = 1e-12

    _summary_exclude = {"function", "derivative"}

    @root_validator(skip_on_failure=True)
    def _custom_handles(cls, values: dict[str, Any]) -> dict[str, Any]:
        if values.get("kind") == ReactionKind.CUSTOM:
            if values.get("function") is None or values.get("derivative") is None:
                raise ValueError("custom reaction requires F and F' handles")
            bracket = values.get("bracket")
            if bracket is None or not bracket[0] < bracket[1]:
                raise ValueError("custom reaction requires a bracket W = (lo, hi)")
        return values

    @property
    def is_quartic(self) -> bool:
        return self.kind == ReactionKind.QUARTIC


class ModelParams(FrontBaseObject):
    q: PositiveFloat
    h: PositiveFloat
    theta_ig: PositiveFloat
    theta_hl: PositiveFloat
    theta_plus: PositiveFloat
    f_prime_plus: float
    domain: tuple[float, float]
    reaction: ReactionSpec = ReactionSpec()

    @root_validator(skip_on_failure=True)
    def _ordering(cls, values: dict[str, Any]) -> dict[str, Any]:
        if not values["theta_ig"] < values["theta_hl"] < values["theta_plus"]:
            raise ValueError("0 < theta_ig < theta_hl < theta_plus violated")
        if values["f_prime_plus"] >= 0:
            raise ValueError("F'(theta_plus) must be negative")
        return values

    @property
    def delta(self) -> float:
        """Width theta_plus - theta_hl of the heat-loss region."""
        return self.theta_plus - self.theta_hl

    def summary_dict(self, exclude: Optional[set[str]] = None) -> dict[str, Any]:
        data = super().summary_dict(exclude=exclude)
        data["reaction"] = self.reaction.kind.value
        return data
