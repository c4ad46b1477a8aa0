"""Intersection of phi and psi, assembly of the global front and its certificates."""

from __future__ import annotations

from collections.abc import Sequence
import logging
import math
from typing import Any, Optional, Union

import numpy as np
from scipy import optimize

from ignifront.data import (
    CriticalData,
    FrontCertificate,
    FrontReport,
    FrontSolution,
    FrontTolerances,
    ModelParams,
    PreheatBranch,
    SeparatrixTrajectory,
)
from ignifront.exceptions import NoSignChange, OutOfRange
from ignifront.explicit_region import flux_at_R, preheat_profile
from ignifront.model import reaction_full
from ignifront.phase_plane import orbit_at_time, separatrix
from ignifront.phi_curve import critical_point, phi, sample_phi
from ignifront.psi_curve import psi, sample_psi
from ignifront.utils import count_sign_changes

_LOGGER = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

EPS = float(np.finfo(float).eps)
UNIQUENESS_POINTS = 32
DEFAULT_PROFILE_DX = 1e-3
DECAY_LENGTHS = 10.0


class _DeltaFunction:
    """Delta(R) = psi(R) - phi(R), remembering the last pair of curve values."""

    def __init__(self, params: ModelParams, critical: CriticalData, tolerances: FrontTolerances) -> None:
        self.params = params
        self.critical = critical
        self.tolerances = tolerances
        self.calls = 0

    def curves(self, R: float) -> tuple[float, float]:
        self.calls += 1
        phi_value = phi(self.params, R, self.critical, tol_rel=self.tolerances.phi_rel)
        psi_value = psi(self.params, R, self.tolerances.separatrix, tol_rel=self.tolerances.psi_rel)
        return phi_value, psi_value

    def __call__(self, R: float) -> float:
        phi_value, psi_value = self.curves(R)
        return psi_value - phi_value


def _left_bracket(delta: _DeltaFunction, R0: float, cap: int) -> tuple[float, float]:
    hi = R0
    R = R0
    for _ in range(cap):
        R *= 0.5
        value = delta(R)
        _LOGGER.debug("Delta(%s)=%s", R, value)
        if value < 0:
            return R, hi
        hi = R
    raise NoSignChange(f"psi - phi stays positive down to R={R} after {cap} halvings")


def _jumps(
    params: ModelParams,
    c: float,
    R: float,
    tail: SeparatrixTrajectory,
) -> tuple[float, float, float, float]:
    theta_0, theta_x_0 = preheat_profile(params, c, R, 0.0)
    left_0, left_x_0 = params.theta_ig, c * params.theta_ig
    theta_R, theta_x_R = preheat_profile(params, c, R, R)
    return (
        abs(float(theta_0) - left_0),
        abs(float(theta_x_0) - left_x_0),
        abs(float(theta_R) - params.theta_hl),
        abs(float(theta_x_R) - tail.v_hl),
    )


def solve_front(
    params: ModelParams,
    tolerances: Optional[FrontTolerances] = None,
) -> FrontSolution:
    """Finds the unique (R*, c*) with phi(R*) = psi(R*) = c* and glues the front.

    Delta = psi - phi is positive at R0 and negative for small R; the left end
    is found by halving R from R0. The front is the preheat branch on
    (-inf, R*] followed by the separatrix at c* shifted to start at x = R*.
    """

    tolerances = tolerances or FrontTolerances()
    critical = critical_point(params)
    R0, c0 = critical.R0, critical.c0
    delta = _DeltaFunction(params, critical, tolerances)

    delta_R0 = delta(R0)
    if not delta_R0 > 0:
        raise NoSignChange(f"psi(R0) - c0 = {delta_R0} is not positive")

    lo, hi = _left_bracket(delta, R0, tolerances.halving_cap)
    probes_R = np.linspace(lo, hi, tolerances.monotonicity_probes + 2)[1:-1]
    probes = tuple(delta(float(R)) for R in probes_R)
    delta_increasing = bool(np.all(np.diff([delta(lo), *probes, delta(hi)]) > 0))

    R_star = float(
        optimize.brentq(delta, lo, hi, xtol=tolerances.intersect_rel * R0, rtol=4 * EPS, maxiter=200),
    )
    phi_star, psi_star = delta.curves(R_star)
    c_star = 0.5 * (phi_star + psi_star)
    _LOGGER.debug("Intersection after %s evaluations of Delta", delta.calls)

    tail = separatrix(params, c_star, tolerances.tail_options)
    jumps = _jumps(params, c_star, R_star, tail)
    flux = flux_at_R(params, R_star, c_star)
    theta_x_at_R = float(preheat_profile(params, c_star, R_star, R_star)[1])
    monotone = bool(theta_x_at_R > 0 and np.all(tail.v > 0))

    certificates = FrontCertificate.from_values(
        c0_jump_at_0=jumps[0],
        c1_jump_at_0=jumps[1],
        c0_jump_at_R=jumps[2],
        c1_jump_at_R=jumps[3],
        phi_residual=abs(c_star - phi_star),
        psi_residual=abs(c_star - psi_star),
        intersection_gap=abs(psi_star - phi_star),
        flux_at_R=flux,
        interior=flux > 0,
        monotone=monotone,
        delta_increasing=delta_increasing,
        delta_probes=probes,
    )

    _LOGGER.info("Solved front R*=%s c*=%s (max jump %s)", R_star, c_star, certificates.max_jump)
    return FrontSolution.from_values(
        params=params,
        R_star=R_star,
        c_star=c_star,
        phi_star=phi_star,
        psi_star=psi_star,
        bracket=(lo, hi),
        R0=R0,
        c0=c0,
        preheat=PreheatBranch.from_values(theta_ig=params.theta_ig, q=params.q, c=c_star, R=R_star),
        tail=tail,
        certificates=certificates,
        tolerances=tolerances,
    )


def delta_profile(
    params: ModelParams,
    points: int = UNIQUENESS_POINTS,
    tolerances: Optional[FrontTolerances] = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(R, psi(R) - phi(R)) on the uniform grid k R0 / points, k = 1..points."""

    tolerances = tolerances or FrontTolerances()
    critical = critical_point(params)
    grid = critical.R0 * np.arange(1, points + 1) / points
    grid[-1] = critical.R0
    phi_samples = sample_phi(params, grid, critical, tol_rel=tolerances.phi_rel)
    psi_samples = sample_psi(params, grid, tolerances.separatrix, tol_rel=tolerances.psi_rel)
    return grid, psi_samples.c - phi_samples.c


def probe_uniqueness(
    params: ModelParams,
    points: int = UNIQUENESS_POINTS,
    tolerances: Optional[FrontTolerances] = None,
) -> int:
    """Number of sign changes of psi - phi on a uniform grid of (0, R0]."""

    return count_sign_changes(delta_profile(params, points, tolerances)[1])


def eval_front(solution: FrontSolution, x: ArrayLike) -> tuple[ArrayLike, ArrayLike]:
    """theta* and theta*_x: closed forms for x <= R*, the separatrix orbit beyond."""

    values = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(values)):
        raise OutOfRange("front evaluation needs finite x")

    theta = np.empty_like(values)
    theta_x = np.empty_like(values)
    left = values <= solution.R_star
    if np.any(left):
        theta[left], theta_x[left] = preheat_profile(
            solution.params,
            solution.c_star,
            solution.R_star,
            values[left],
        )
    right = ~left
    if np.any(right):
        theta[right], theta_x[right] = orbit_at_time(solution.tail, values[right] - solution.R_star)

    if np.ndim(x) == 0:
        return float(theta[0]), float(theta_x[0])
    return theta.reshape(np.shape(x)), theta_x.reshape(np.shape(x))


def default_front_grid(solution: FrontSolution, dx: float = DEFAULT_PROFILE_DX) -> np.ndarray:
    """Uniform grid of multiples of dx covering [-10/c*, R* + 10/|lambda_minus|].

    x = 0 is always a node; R* generally is not, so exactly the stencils
    straddling it are dropped by `verify_front`.
    """

    if not (math.isfinite(dx) and dx > 0):
        raise OutOfRange(f"grid spacing must be positive, got {dx}")
    k_min = math.floor(-DECAY_LENGTHS / solution.c_star / dx)
    k_max = math.ceil((solution.R_star + DECAY_LENGTHS / abs(solution.lambda_minus)) / dx)
    return dx * np.arange(k_min, k_max + 1, dtype=float)


def verify_front(
    solution: FrontSolution,
    grid: Optional[Sequence[float] | np.ndarray] = None,
) -> FrontReport:
    """Numerical audit of theta* on a grid.

    Second-order finite differences give the residual of
    theta_xx - c* theta_x + F_full(theta); stencils straddling x = 0 or
    x = R* are excluded.
    """

    x = default_front_grid(solution) if grid is None else np.unique(np.asarray(grid, dtype=float))
    params, c = solution.params, solution.c_star
    theta, theta_x = eval_front(solution, x)
    assert isinstance(theta, np.ndarray) and isinstance(theta_x, np.ndarray)

    h1 = x[1:-1] - x[:-2]
    h2 = x[2:] - x[1:-1]
    prev, mid, nxt = theta[:-2], theta[1:-1], theta[2:]
    denom = h1 * h2 * (h1 + h2)
    fd_xx = 2.0 * (h1 * nxt - (h1 + h2) * mid + h2 * prev) / denom
    fd_x = (h1 * h1 * nxt - h2 * h2 * prev + (h2 * h2 - h1 * h1) * mid) / denom
    residual = fd_xx - c * fd_x + np.asarray(reaction_full(params, mid))

    excluded = np.zeros(len(mid), dtype=bool)
    for s in (0.0, solution.R_star):
        excluded |= (x[:-2] < s) & (s < x[2:])
    kept = residual[~excluded]

    jumps = _jumps(params, c, solution.R_star, solution.tail)
    report = FrontReport.from_values(
        n_points=len(x),
        x_min=float(x[0]),
        x_max=float(x[-1]),
        dx_max=float(np.max(np.diff(x))) if len(x) > 1 else 0.0,
        ode_residual_max=float(np.max(np.abs(kept))) if len(kept) else 0.0,
        excluded_points=int(np.count_nonzero(excluded)),
        c0_jump_at_0=jumps[0],
        c1_jump_at_0=jumps[1],
        c0_jump_at_R=jumps[2],
        c1_jump_at_R=jumps[3],
        min_theta_x=float(np.min(theta_x)),
        strictly_increasing=bool(np.all(np.diff(theta) > 0)),
        left_limit_error=abs(float(theta[0])),
        left_limit_bound=params.theta_ig * math.exp(c * float(x[0])),
        right_limit_error=abs(float(theta[-1]) - params.theta_plus),
    )
    _LOGGER.debug("Front audit: residual %s on %s points", report.ode_residual_max, report.n_points)
    return report


def front_summary(solution: FrontSolution, report: Optional[FrontReport] = None) -> dict[str, Any]:
    summary = solution.summary_dict()
    summary["verification"] = report.summary_dict() if report is not None else None
    return summary


def ignition_point(x: np.ndarray, theta: np.ndarray, level: float) -> Optional[float]:
    """First crossing of `level` from the left, linearly interpolated."""

    above = np.flatnonzero(theta >= level)
    if len(above) == 0 or above[0] == 0:
        return None
    i = int(above[0])
    fraction = (level - theta[i - 1]) / (theta[i] - theta[i - 1])
    return float(x[i - 1] + fraction * (x[i] - x[i - 1]))


def profile_mismatch(solution: FrontSolution, x: np.ndarray, theta: np.ndarray) -> float:
    """max |theta - theta*| after translating the profile so that theta = theta_ig at x = 0."""

    shift = ignition_point(x, theta, solution.params.theta_ig)
    if shift is None:
        raise OutOfRange("profile never reaches theta_ig")
    reference = np.asarray(eval_front(solution, np.asarray(x) - shift)[0])
    return float(np.max(np.abs(theta - reference)))
