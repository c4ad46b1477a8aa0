from __future__ import annotations

from collections.abc import Iterator

import numpy as np

from ignifront.data.base import FrontBaseObject
from ignifront.data.types import CurveKind


class CandidatePair(FrontBaseObject):
    """A point (R, c) tested against the admissible region Q+ = {c >= qR/theta_hl}."""

    R: float
    c: float
    flux: float
    in_Q_plus: bool
    on_boundary: bool


class CriticalData(FrontBaseObject):
    """Endpoint (R0, c0) of the phi curve and the constants a, b, c_tilde."""

    a: float
    b: float
    c_tilde: float
    c0: float
    R0: float
    x0_at_c0: float
    f_at_c0: float

    @property
    def B0(self) -> tuple[float, float]:
        return (self.R0, self.c0)


class CurveSamples(FrontBaseObject):
    kind: CurveKind
    R: np.ndarray
    c: np.ndarray
    residuals: np.ndarray

    def __len__(self) -> int:
        return len(self.R)

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.R.tolist(), self.c.tolist()))

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals)) if len(self.residuals) else 0.0

    def rows(self) -> Iterator[tuple[float, float, float]]:
        """CSV rows `R,c,residual`."""
        yield from zip(self.R.tolist(), self.c.tolist(), self.residuals.tolist())
