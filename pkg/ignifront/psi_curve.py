"""The increasing curve c = psi(R) defined by c theta_hl - qR = v_c(theta_hl)."""

from __future__ import annotations

from collections.abc import Sequence
import logging
import math
from typing import Optional

import numpy as np
from scipy import optimize

from ignifront.data import CurveKind, CurveSamples, ModelParams, SeparatrixOptions
from ignifront.exceptions import BracketFailure, OutOfRange, ToleranceFailure
from ignifront.model import hamiltonian_level
from ignifront.phase_plane import v_at_hl
from ignifront.phi_curve import critical_point

_LOGGER = logging.getLogger(__name__)

TOL_R_REL = 1e-10
DEFAULT_POINTS = 64
DEFAULT_R_MAX_FACTOR = 3.0
WARM_SLACK = 1e-9


def psi_options(options: Optional[SeparatrixOptions] = None) -> SeparatrixOptions:
    """Integrator setting for the inversion, one order below the base tolerances."""

    return (options or SeparatrixOptions()).tightened(10)


def R_of_c(
    params: ModelParams,
    c: float,
    options: Optional[SeparatrixOptions] = None,
) -> float:
    """(c theta_hl - v_c(theta_hl)) / q, the inverse of psi."""

    return (c * params.theta_hl - v_at_hl(params, c, options)) / params.q


def c_plus_bound(params: ModelParams, R: float) -> float:
    """(v0(theta_hl) + qR) / theta_hl, the upper bound of psi."""

    v0_hl = float(hamiltonian_level(params, params.theta_hl))
    return (v0_hl + params.q * R) / params.theta_hl


def tol_R(R: float, rel: float = TOL_R_REL) -> float:
    return rel * max(1.0, R)


def _invert(
    params: ModelParams,
    R: float,
    lo: float,
    hi: float,
    options: SeparatrixOptions,
    tol_rel: float,
) -> tuple[float, float]:
    def residual(c: float) -> float:
        return R_of_c(params, c, options) - R

    r_lo, r_hi = residual(lo), residual(hi)
    if r_lo == 0.0:
        return lo, 0.0
    if not (r_lo < 0 <= r_hi):
        raise BracketFailure(
            f"R_of_c - R has no sign change on [{lo}, {hi}] for R={R} (got {r_lo}, {r_hi})",
        )
    if r_hi == 0.0:
        return hi, 0.0

    c = float(optimize.brentq(residual, lo, hi, xtol=1e-14 * max(1.0, hi), rtol=1e-15, maxiter=200))
    error = abs(residual(c))
    if error > tol_R(R, tol_rel):
        raise ToleranceFailure(f"|R_of_c(psi({R})) - R|={error} above tolerance")
    return c, error


def _bracket(params: ModelParams, R: float) -> tuple[float, float]:
    return params.q * R / params.theta_hl, c_plus_bound(params, R)


def psi(
    params: ModelParams,
    R: float,
    options: Optional[SeparatrixOptions] = None,
    tol_rel: float = TOL_R_REL,
) -> float:
    """The unique c with R_of_c(c) = R, bracketed by [qR/theta_hl, c_plus(R)]."""

    if not math.isfinite(R) or R < 0:
        raise OutOfRange(f"psi is defined for R >= 0, got R={R}")
    lo, hi = _bracket(params, R)
    c, error = _invert(params, R, lo, hi, psi_options(options), tol_rel)
    _LOGGER.debug("psi(%s)=%s, residual %s", R, c, error)
    return c


def default_psi_grid(
    params: ModelParams,
    points: int = DEFAULT_POINTS,
    r_max_factor: float = DEFAULT_R_MAX_FACTOR,
) -> np.ndarray:
    return np.linspace(0.0, r_max_factor * critical_point(params).R0, points)


def sample_psi(
    params: ModelParams,
    R_grid: Optional[Sequence[float] | np.ndarray] = None,
    options: Optional[SeparatrixOptions] = None,
    tol_rel: float = TOL_R_REL,
) -> CurveSamples:
    """Tabulates psi on an ascending grid of R >= 0.

    Each point is bracketed by the previous value and the slope bound
    dpsi/dR < q/theta_hl, falling back to the global bracket.
    """

    grid = default_psi_grid(params) if R_grid is None else np.asarray(R_grid, dtype=float)
    if len(grid) and (grid[0] < 0 or not np.all(np.isfinite(grid))):
        raise OutOfRange("psi grid must be finite and non-negative")
    if len(grid) > 1 and np.any(np.diff(grid) <= 0):
        raise OutOfRange("R grid must be strictly ascending")

    inner = psi_options(options)
    slope = params.q / params.theta_hl
    speeds = np.empty_like(grid)
    residuals = np.empty_like(grid)
    previous: Optional[tuple[float, float]] = None
    for i, R in enumerate(grid):
        R = float(R)
        lo, hi = _bracket(params, R)
        if previous is not None:
            prev_R, prev_c = previous
            lo = max(lo, prev_c)
            hi = min(hi, (prev_c + slope * (R - prev_R)) * (1.0 + WARM_SLACK))
        try:
            speeds[i], residuals[i] = _invert(params, R, lo, hi, inner, tol_rel)
        except BracketFailure:
            _LOGGER.warning("Warm bracket failed at R=%s, using the global bracket", R)
            speeds[i], residuals[i] = _invert(params, R, *_bracket(params, R), inner, tol_rel)
        previous = (R, float(speeds[i]))

    if len(speeds) > 1 and np.any(np.diff(speeds) <= 0):
        raise ToleranceFailure("psi samples are not strictly increasing")

    return CurveSamples.from_values(
        kind=CurveKind.PSI,
        R=grid,
        c=speeds,
        residuals=residuals,
    )
