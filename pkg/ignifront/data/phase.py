from __future__ import annotations

from typing import Any, Optional, Union

import numpy as np

from ignifront.data.base import FrontBaseObject
from ignifront.data.types import (
    IntegratorMethod,
    PositiveFloat,
    SingularPointKind,
)


class SaddleData(FrontBaseObject):
    """Eigen-data of the hyperbolic saddle (theta_plus, 0) of X_c."""

    c: float
    location: tuple[float, float]
    lambda_minus: float
    lambda_plus: float
    stable_dir: tuple[float, float]
    unstable_dir: tuple[float, float]

    @property
    def gap(self) -> float:
        """lambda_plus - lambda_minus = sqrt(c^2 - 4F'(theta_plus))."""
        return self.lambda_plus - self.lambda_minus


class SeparatrixOptions(FrontBaseObject):
    epsilon_seed_rel: PositiveFloat = 1e-7
    epsilon_seed: Optional[PositiveFloat] = None
    rtol: PositiveFloat = 1e-10
    atol: PositiveFloat = 1e-12
    method: IntegratorMethod = IntegratorMethod.AUTO
    stiffness_ratio: PositiveFloat = 50.0

    def seed_offset(self, delta: float) -> float:
        """Saddle offset used for a heat-loss region of width `delta`."""
        if self.epsilon_seed is not None:
            return self.epsilon_seed
        return self.epsilon_seed_rel * delta

    def tightened(self, factor: float) -> SeparatrixOptions:
        return self.copy(update={"rtol": self.rtol / factor, "atol": self.atol / factor})

    def with_seed(self, epsilon_seed: float) -> SeparatrixOptions:
        return self.copy(update={"epsilon_seed": epsilon_seed})


class SeparatrixTrajectory(FrontBaseObject):
    """Stable separatrix of the saddle, sampled from (theta_hl, v_hl) to the seed.

    `t` is zero at u = theta_hl and grows toward the saddle. `dense` is the
    integrator's dense output in the graph parametrization: for a u in
    [theta_hl, u_end] it returns (v(u), tau(u)) where t(u) = tau(u) - tau_hl.
    """

    c: float
    t: np.ndarray
    u: np.ndarray
    v: np.ndarray
    v_hl: float
    tau_hl: float
    t_end: float
    epsilon_seed: float
    theta_plus: float
    theta_hl: float
    saddle: SaddleData
    method: IntegratorMethod
    nfev: int
    dense: Any

    _summary_exclude = {"t", "u", "v", "dense"}

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.t.tolist(), self.u.tolist(), self.v.tolist()))

    @property
    def u_end(self) -> float:
        return float(self.u[-1])

    @property
    def v_end(self) -> float:
        return float(self.v[-1])

    @property
    def lambda_minus(self) -> float:
        return self.saddle.lambda_minus

    def v_of_u(self, u: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """v_c(u) on [theta_hl, u_end] from the dense output."""
        values = self.dense(np.clip(u, self.theta_hl, self.u_end))[0]
        return float(values) if np.ndim(u) == 0 else values

    def t_of_u(self, u: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """Time t(u) along the orbit, zero at theta_hl."""
        values = self.dense(np.clip(u, self.theta_hl, self.u_end))[1] - self.tau_hl
        return float(values) if np.ndim(u) == 0 else values

    def rows(self) -> list[tuple[float, float, float]]:
        """CSV rows `t,u,v`."""
        return self.samples


class SingularPoint(FrontBaseObject):
    u: float
    v: float
    kind: SingularPointKind
    eigen_real: tuple[float, float]
    eigen_imag: tuple[float, float]
    in_domain: bool


class PhasePortrait(FrontBaseObject):
    """Direction field of X_c over a window plus the triangle [p0, p1, p2]."""

    c: float
    window: tuple[float, float, float, float]
    u: np.ndarray
    v: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    triangle_side: tuple[str, ...]
    triangle_u: np.ndarray
    triangle_v: np.ndarray
    separatrix: Optional[SeparatrixTrajectory] = None
    singular_points: tuple[SingularPoint, ...] = ()

    def field_rows(self) -> list[tuple[float, float, float, float]]:
        """CSV rows `u,v,du,dv`."""
        return list(
            zip(self.u.tolist(), self.v.tolist(), self.du.tolist(), self.dv.tolist()),
        )

    def triangle_rows(self) -> list[tuple[str, float, float]]:
        return list(
            zip(self.triangle_side, self.triangle_u.tolist(), self.triangle_v.tolist()),
        )
