from __future__ import annotations

from typing import Any, Optional

from ignifront.data.base import FrontBaseObject
from ignifront.data.params import ModelParams
from ignifront.data.phase import SeparatrixOptions, SeparatrixTrajectory
from ignifront.data.types import GridSize, PositiveFloat


class FrontTolerances(FrontBaseObject):
    """Tolerances of the intersection solve.

    `separatrix` is the base integrator setting; the psi inversion runs one
    order tighter and the stored front tail two orders tighter.
    """

    intersect_rel: PositiveFloat = 1e-10
    psi_rel: PositiveFloat = 1e-10
    phi_rel: PositiveFloat = 1e-12
    separatrix: SeparatrixOptions = SeparatrixOptions()
    halving_cap: GridSize = 60
    monotonicity_probes: GridSize = 8

    @property
    def psi_options(self) -> SeparatrixOptions:
        return self.separatrix.tightened(10)

    @property
    def tail_options(self) -> SeparatrixOptions:
        return self.separatrix.tightened(100)

    def tightened(self, factor: float) -> FrontTolerances:
        return self.copy(
            update={
                "intersect_rel": self.intersect_rel / factor,
                "psi_rel": self.psi_rel / factor,
                "phi_rel": max(self.phi_rel / factor, 1e-15),
                "separatrix": self.separatrix.tightened(factor),
            },
        )


class PreheatBranch(FrontBaseObject):
    """Closed-form front on (-inf, R*]: theta_ig e^{cx} left of 0, the three-term formula on [0, R*]."""

    theta_ig: float
    q: float
    c: float
    R: float


class FrontCertificate(FrontBaseObject):
    c0_jump_at_0: float
    c1_jump_at_0: float
    c0_jump_at_R: float
    c1_jump_at_R: float
    phi_residual: float
    psi_residual: float
    intersection_gap: float
    flux_at_R: float
    interior: bool
    monotone: bool
    delta_increasing: bool
    delta_probes: tuple[float, ...]

    @property
    def max_jump(self) -> float:
        return max(self.c0_jump_at_0, self.c1_jump_at_0, self.c0_jump_at_R, self.c1_jump_at_R)


class FrontSolution(FrontBaseObject):
    params: ModelParams
    R_star: float
    c_star: float
    phi_star: float
    psi_star: float
    bracket: tuple[float, float]
    R0: float
    c0: float
    preheat: PreheatBranch
    tail: SeparatrixTrajectory
    certificates: FrontCertificate
    tolerances: FrontTolerances

    @property
    def lambda_minus(self) -> float:
        return self.tail.lambda_minus

    def summary_dict(self, exclude: Optional[set[str]] = None) -> dict[str, Any]:
        """front.json document."""

        params = self.params
        return {
            "q": params.q,
            "h": params.h,
            "theta_ig": params.theta_ig,
            "theta_hl": params.theta_hl,
            "theta_plus": params.theta_plus,
            "reaction": params.reaction.kind.value,
            "R_star": self.R_star,
            "c_star": self.c_star,
            "phi_at_R_star": self.phi_star,
            "psi_at_R_star": self.psi_star,
            "flux_at_R_star": self.c_star * params.theta_hl - params.q * self.R_star,
            "R0": self.R0,
            "c0": self.c0,
            "bracket": list(self.bracket),
            "v_hl": self.tail.v_hl,
            "lambda_minus": self.tail.saddle.lambda_minus,
            "lambda_plus": self.tail.saddle.lambda_plus,
            "epsilon_seed": self.tail.epsilon_seed,
            "certificates": self.certificates.summary_dict(),
        }


class FrontReport(FrontBaseObject):
    """Numerical audit of an assembled front on a grid."""

    n_points: int
    x_min: float
    x_max: float
    dx_max: float
    ode_residual_max: float
    excluded_points: int
    c0_jump_at_0: float
    c1_jump_at_0: float
    c0_jump_at_R: float
    c1_jump_at_R: float
    min_theta_x: float
    strictly_increasing: bool
    left_limit_error: float
    left_limit_bound: float
    right_limit_error: float
