"""Closed-form preheat solution on (-inf, R] and the compatibility function G."""

from __future__ import annotations

import logging
import math
from typing import Optional, Union

import numpy as np

from ignifront.data import CandidatePair, ModelParams
from ignifront.exceptions import OutOfRange, SpeedNonPositive

_LOGGER = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

BOUNDARY_REL = 1e-12
_SERIES_CUTOFF = 0.1


def _require_speed(c: float) -> None:
    if not c > 0 or not math.isfinite(c):
        raise SpeedNonPositive(f"front speed must be positive, got c={c}")


def expm1_minus_linear(z: float) -> float:
    """e^z - 1 - z, accurate for small |z|."""

    if abs(z) < _SERIES_CUTOFF:
        term = z * z / 2.0
        total = term
        for k in range(3, 12):
            term *= z / k
            total += term
        return total
    return math.expm1(z) - z


def preheat_profile(
    params: ModelParams,
    c: float,
    R: float,
    x: ArrayLike,
) -> tuple[ArrayLike, ArrayLike]:
    """theta and theta_x of the explicit front for x <= R.

    theta_ig e^{cx} for x < 0, and
    theta_ig e^{cx} + (q/c) x - (q/c^2)(e^{cx} - 1) on [0, R].
    """

    _require_speed(c)
    values = np.asarray(x, dtype=float)
    if np.any(values > R):
        raise OutOfRange(f"preheat branch is defined for x <= R={R}")

    q, ig = params.q, params.theta_ig
    growth = np.exp(c * values)
    reacting = values >= 0
    em1 = np.expm1(c * np.where(reacting, values, 0.0))

    theta = np.where(
        reacting,
        ig * growth + (q / c) * values - (q / (c * c)) * em1,
        ig * growth,
    )
    theta_x = np.where(reacting, c * ig * growth - (q / c) * em1, c * ig * growth)

    if np.ndim(x) == 0:
        return float(theta), float(theta_x)
    return theta, theta_x


def G(params: ModelParams, R: float, c: float) -> float:
    """(e^{cR} - 1 - cR) q - c^2 (theta_ig e^{cR} - theta_hl); zero iff theta(R) = theta_hl."""

    z = c * R
    return (
        params.q * expm1_minus_linear(z)
        - c * c * params.theta_ig * math.expm1(z)
        + c * c * (params.theta_hl - params.theta_ig)
    )


def G_partials(params: ModelParams, R: float, c: float) -> tuple[float, float]:
    """Exact (dG/dR, dG/dc), valid off the level set G = 0."""

    q, ig, hl = params.q, params.theta_ig, params.theta_hl
    z = c * R
    em1 = math.expm1(z)
    ez = math.exp(z)
    dG_dR = q * c * em1 - c**3 * ig * ez
    dG_dc = q * R * em1 - c * ig * ez * (2.0 + z) + 2.0 * c * hl
    return dG_dR, dG_dc


def flux_at_R(params: ModelParams, R: float, c: float) -> float:
    """c theta_hl - qR, the outgoing derivative at the heat-loss interface."""

    return c * params.theta_hl - params.q * R


def boundary_tolerance(params: ModelParams, c: float) -> float:
    return BOUNDARY_REL * max(1.0, c * params.theta_hl)


def classify_pair(
    params: ModelParams,
    R: float,
    c: float,
    tol: Optional[float] = None,
) -> CandidatePair:
    """Classifies (R, c) against Q+ = {R > 0, c >= qR/theta_hl}."""

    tol = boundary_tolerance(params, c) if tol is None else tol
    flux = flux_at_R(params, R, c)
    return CandidatePair.from_values(
        R=R,
        c=c,
        flux=flux,
        in_Q_plus=flux >= -tol,
        on_boundary=abs(flux) <= tol,
    )
