from __future__ import annotations

from typing import Optional

import numpy as np

from ignifront.data.base import FrontBaseObject
from ignifront.data.types import FractionFloat, NonNegativeFloat, PositiveFloat


class SimulationConfig(FrontBaseObject):
    """Explicit finite-difference run on [-L, L].

    `dt` defaults to 0.4 dx^2. With `follow_front` the window is shifted by
    whole cells so the ignition point stays near its center.
    """

    L: PositiveFloat = 12.0
    dx: PositiveFloat = 5e-3
    dt: Optional[PositiveFloat] = None
    T: NonNegativeFloat = 8.0
    w: PositiveFloat = 0.5
    window: FractionFloat = 0.5
    output_interval: PositiveFloat = 0.05
    follow_front: bool = True
    boundary_margin: NonNegativeFloat = 4.0
    disable_reaction: bool = False
    snapshot_times: tuple[float, ...] = ()

    @property
    def time_step(self) -> float:
        return self.dt if self.dt is not None else 0.4 * self.dx**2

    @property
    def n_cells(self) -> int:
        return int(round(2 * self.L / self.dx))

    def grid(self) -> np.ndarray:
        return np.linspace(-self.L, self.L, self.n_cells + 1)


class FrontSeries(FrontBaseObject):
    """Ignition point x_ig(t) sampled at fixed output intervals."""

    t: np.ndarray
    x_ig: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    def rows(self) -> list[tuple[float, float]]:
        """CSV rows `t,x_ig`."""
        return list(zip(self.t.tolist(), self.x_ig.tolist()))


class Snapshot(FrontBaseObject):
    time: float
    x: np.ndarray
    theta: np.ndarray

    def rows(self) -> list[tuple[float, float]]:
        """CSV rows `x,theta`."""
        return list(zip(self.x.tolist(), self.theta.tolist()))


class SimulationResult(FrontBaseObject):
    config: SimulationConfig
    series: FrontSeries
    x: np.ndarray
    theta: np.ndarray
    snapshots: tuple[Snapshot, ...]
    offset: float
    steps: int
    theta_min: float
    theta_max: float

    @property
    def final(self) -> Snapshot:
        return Snapshot.from_values(time=self.config.T, x=self.x, theta=self.theta)


class DriftReport(FrontBaseObject):
    """Stationarity check of the front in the co-moving frame."""

    T: float
    speed: float
    drift: float
    raw_drift: float
    offset: float
    max_theta_x: float
    theta_min: float
    theta_max: float
    steps: int


class ConvergenceLevel(FrontBaseObject):
    dx: float
    c_measured: float
    error: float
    rel_error: float
    observed_order: Optional[float] = None
