"""The interface-compatibility curve c = phi(R) on (0, R0]."""

from __future__ import annotations

from collections.abc import Callable, Sequence
import logging
import math
from typing import Optional

import numpy as np
from scipy import optimize

from ignifront.data import CriticalData, CurveKind, CurveSamples, ModelParams
from ignifront.exceptions import BracketFailure, OutOfRange, ToleranceFailure
from ignifront.explicit_region import G, G_partials, flux_at_R
from ignifront.utils import count_sign_changes, geometric_grid, is_debug

_LOGGER = logging.getLogger(__name__)

EPS = float(np.finfo(float).eps)
SCAN_POINTS = 512
ENDPOINT_REL = 1e-12
HI_CAP = 1e6
MAX_EXPONENT = 700.0
MAX_ITERATIONS = 200
DEFAULT_POINTS = 256
DEFAULT_R_MIN_FACTOR = 1e-3
TOL_G_REL = 1e-12


def critical_constants(params: ModelParams) -> tuple[float, float, float]:
    """(a, b, c_tilde) with b = sqrt(q/theta_ig), a = (theta_hl/theta_ig - 1)/b."""

    q, ig, hl = params.q, params.theta_ig, params.theta_hl
    b = math.sqrt(q / ig)
    a = (hl / ig - 1.0) / b
    c_tilde = math.sqrt(q * (1.0 / ig - 1.0 / hl))
    return a, b, c_tilde


def critical_equation(params: ModelParams, c: float) -> float:
    """f(c) = (1 - (theta_ig/q) c^2) e^{(theta_hl/q) c^2} - 1."""

    q = params.q
    return (1.0 - (params.theta_ig / q) * c * c) * math.exp((params.theta_hl / q) * c * c) - 1.0


def critical_point(params: ModelParams) -> CriticalData:
    """Critical speed c0 in (c_tilde, b) and R0 = c0 theta_hl / q."""

    a, b, c_tilde = critical_constants(params)

    def func(c: float) -> float:
        return critical_equation(params, c)

    scan = np.linspace(c_tilde, b, SCAN_POINTS)
    values = np.array([func(float(c)) for c in scan])
    changes = count_sign_changes(values)
    if not values[0] > 0 or changes != 1:
        raise BracketFailure(
            f"f(c) must change sign exactly once on [c_tilde, b]=[{c_tilde}, {b}], found {changes}",
        )

    c0 = float(optimize.brentq(func, c_tilde, b, xtol=1e-15, rtol=4 * EPS, maxiter=MAX_ITERATIONS))
    R0 = c0 * params.theta_hl / params.q
    x0 = -math.log1p(-c0 * c0 * params.theta_ig / params.q) / c0
    if abs(x0 - R0) > 1e-9 * max(1.0, R0):
        raise ToleranceFailure(f"R0={R0} and x0={x0} disagree at c0={c0}")

    _LOGGER.debug("Critical point c0=%s R0=%s", c0, R0)
    return CriticalData.from_values(
        a=a,
        b=b,
        c_tilde=c_tilde,
        c0=c0,
        R0=R0,
        x0_at_c0=x0,
        f_at_c0=func(c0),
    )


def safeguarded_newton(
    func: Callable[[float], tuple[float, float]],
    lo: float,
    hi: float,
    x0: Optional[float] = None,
    maxiter: int = MAX_ITERATIONS,
) -> tuple[float, int]:
    """Newton-Raphson kept inside a sign-change bracket, bisecting on escape.

    `func` returns (f, f'). The bracket must satisfy f(lo) f(hi) < 0.
    Returns the root and the number of iterations used.
    """

    f_lo, _ = func(lo)
    f_hi, _ = func(hi)
    if f_lo == 0.0:
        return lo, 0
    if f_hi == 0.0:
        return hi, 0
    if f_lo * f_hi > 0:
        raise BracketFailure(f"root not bracketed on [{lo}, {hi}]")

    if f_lo < 0:
        xl, xh = lo, hi
    else:
        xl, xh = hi, lo

    root = 0.5 * (lo + hi) if x0 is None or not min(lo, hi) < x0 < max(lo, hi) else x0
    dx_old = abs(hi - lo)
    dx = dx_old
    f, df = func(root)
    for iteration in range(1, maxiter + 1):
        if f == 0.0:
            return root, iteration
        if ((root - xh) * df - f) * ((root - xl) * df - f) > 0 or abs(2.0 * f) > abs(dx_old * df):
            dx_old = dx
            dx = 0.5 * (xh - xl)
            root = xl + dx
            _LOGGER.debug("Newton step left bracket, bisecting to %s", root)
            if xl == root:
                return root, iteration
        else:
            dx_old = dx
            dx = f / df
            previous = root
            root -= dx
            if previous == root:
                return root, iteration
        if abs(dx) <= 4 * EPS * abs(root):
            return root, iteration
        f, df = func(root)
        if f < 0:
            xl = root
        else:
            xh = root

    raise ToleranceFailure(f"safeguarded Newton did not converge in {maxiter} iterations")


def tol_G(params: ModelParams, R: float, c: float, rel: float = TOL_G_REL) -> float:
    """Residual tolerance for G, scaled by max(q e^{cR}, c^2 theta_hl)."""

    return rel * max(params.q * math.exp(min(c * R, MAX_EXPONENT)), c * c * params.theta_hl)


def _phi_with_residual(
    params: ModelParams,
    R: float,
    critical: CriticalData,
    guess: Optional[float],
    tol_rel: float,
) -> tuple[float, float]:
    if not math.isfinite(R) or R <= 0 or R > critical.R0 * (1.0 + ENDPOINT_REL):
        raise OutOfRange(f"phi is defined on (0, R0]=(0, {critical.R0}], got R={R}")

    c0 = critical.c0
    if R >= critical.R0 * (1.0 - ENDPOINT_REL):
        return c0, abs(G(params, R, c0))

    def func(c: float) -> tuple[float, float]:
        return G(params, R, c), G_partials(params, R, c)[1]

    lo = max(c0, params.q * R / params.theta_hl) * (1.0 + ENDPOINT_REL)
    g_lo = G(params, R, lo)
    if g_lo <= 0:
        # the flat endpoint: the root sits between c0 and lo
        if G(params, R, c0) <= 0:
            return c0, abs(G(params, R, c0))
        c = float(optimize.brentq(lambda x: G(params, R, x), c0, lo, xtol=1e-15, rtol=4 * EPS))
        return c, abs(G(params, R, c))

    start = guess if guess is not None else math.log(params.theta_hl / params.theta_ig) / R
    hi = max(start, lo * (1.0 + 1e-3))
    while G(params, R, hi) >= 0:
        lo = hi
        hi *= 2.0
        if hi > HI_CAP or hi * R > MAX_EXPONENT:
            raise BracketFailure(f"no sign change of G(R={R}, c) below c={hi}")

    c, iterations = safeguarded_newton(func, lo, hi, x0=guess)
    residual = abs(G(params, R, c))
    _LOGGER.debug("phi(%s)=%s after %s iterations, |G|=%s", R, c, iterations, residual)
    if residual > tol_G(params, R, c, tol_rel):
        raise ToleranceFailure(f"|G({R}, {c})|={residual} above tolerance")
    return c, residual


def phi(
    params: ModelParams,
    R: float,
    critical: Optional[CriticalData] = None,
    guess: Optional[float] = None,
    tol_rel: float = TOL_G_REL,
) -> float:
    """The unique c >= max(c0, qR/theta_hl) with G(R, c) = 0, for 0 < R <= R0."""

    critical = critical or critical_point(params)
    return _phi_with_residual(params, R, critical, guess, tol_rel)[0]


def default_phi_grid(
    critical: CriticalData,
    points: int = DEFAULT_POINTS,
    r_min_factor: float = DEFAULT_R_MIN_FACTOR,
) -> np.ndarray:
    return geometric_grid(r_min_factor * critical.R0, critical.R0, points)


def sample_phi(
    params: ModelParams,
    R_grid: Optional[Sequence[float] | np.ndarray] = None,
    critical: Optional[CriticalData] = None,
    tol_rel: float = TOL_G_REL,
) -> CurveSamples:
    """Tabulates phi along an ascending grid, warm-starting from the previous point."""

    critical = critical or critical_point(params)
    grid = default_phi_grid(critical) if R_grid is None else np.asarray(R_grid, dtype=float)
    if len(grid) > 1 and np.any(np.diff(grid) <= 0):
        raise OutOfRange("R grid must be strictly ascending")

    speeds = np.empty_like(grid)
    residuals = np.empty_like(grid)
    guess: Optional[float] = None
    for i, R in enumerate(grid):
        speeds[i], residuals[i] = _phi_with_residual(params, float(R), critical, guess, tol_rel)
        guess = float(speeds[i])

    if is_debug():
        if np.any(np.diff(speeds) >= 0):
            raise ToleranceFailure("phi samples are not strictly decreasing")
        fluxes = [flux_at_R(params, float(R), float(c)) for R, c in zip(grid, speeds)]
        if min(fluxes) < -1e-12 * max(1.0, float(speeds.max()) * params.theta_hl):
            raise ToleranceFailure("phi samples left Q+")

    return CurveSamples.from_values(
        kind=CurveKind.PHI,
        R=grid,
        c=speeds,
        residuals=residuals,
    )


def m_limit(params: ModelParams) -> float:
    """Limit of R phi(R) as R -> 0+: ln(theta_hl / theta_ig)."""

    return math.log(params.theta_hl / params.theta_ig)


def extrapolate_m(samples: CurveSamples, count: int = 3) -> float:
    """Richardson-style extrapolation of m(R) = R phi(R) to R = 0.

    Fits a polynomial in R through the `count` smallest-R samples and
    returns its value at 0.
    """

    R = samples.R[:count]
    m = samples.R[:count] * samples.c[:count]
    coefficients = np.polyfit(R, m, count - 1)
    return float(np.polyval(coefficients, 0.0))
