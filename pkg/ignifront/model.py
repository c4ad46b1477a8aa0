"""Model parameters, the piecewise reaction term and its potential."""

from __future__ import annotations

from collections.abc import Callable
import logging
import math
from typing import Optional, Union

import numpy as np
from scipy import integrate, optimize

from ignifront.data import ModelParams, ReactionKind, ReactionSpec
from ignifront.exceptions import (
    InvalidReaction,
    NonFinite,
    NonPositiveParameter,
    OrderingViolated,
    OutOfDomain,
)
from ignifront.utils import is_finite

_LOGGER = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

DOMAIN_BELOW = 0.1
DOMAIN_ABOVE = 0.5
VALIDATION_POINTS = 256


def quartic_theta_plus(q: float, h: float) -> float:
    """(1 + q/h)^(1/4) - 1, the zero of q - h((1+u)^4 - 1)."""

    if not is_finite(q, h):
        raise NonFinite(f"q and h must be finite, got q={q}, h={h}")
    if q <= 0 or h <= 0:
        raise NonPositiveParameter(f"q and h must be positive, got q={q}, h={h}")
    return math.expm1(0.25 * math.log1p(q / h))


def theta_plus(params: ModelParams) -> float:
    if params.reaction.is_quartic:
        return quartic_theta_plus(params.q, params.h)
    return params.theta_plus


def default_domain(theta_hl: float, theta_p: float) -> tuple[float, float]:
    delta = theta_p - theta_hl
    return (theta_hl - DOMAIN_BELOW * delta, theta_p + DOMAIN_ABOVE * delta)


def _custom_theta_plus(reaction: ReactionSpec) -> float:
    assert reaction.function is not None
    assert reaction.bracket is not None

    func = reaction.function
    lo, hi = reaction.bracket
    f_lo, f_hi = func(lo), func(hi)
    if not is_finite(f_lo, f_hi) or f_lo * f_hi > 0:
        raise InvalidReaction(
            f"custom F must change sign on W=[{lo}, {hi}], got F={f_lo}, {f_hi}",
        )
    return float(optimize.brentq(func, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps))


def _check_custom_reaction(
    reaction: ReactionSpec,
    theta_hl: float,
    theta_p: float,
) -> float:
    assert reaction.function is not None
    assert reaction.derivative is not None
    assert reaction.bracket is not None

    lo, hi = reaction.bracket
    if not lo <= theta_hl:
        raise InvalidReaction(f"W=[{lo}, {hi}] must contain theta_hl={theta_hl}")

    slope = float(reaction.derivative(theta_p))
    if not slope < 0:
        raise InvalidReaction(f"F'(theta_plus) must be negative, got {slope}")

    grid = np.linspace(theta_hl, theta_p, VALIDATION_POINTS, endpoint=False)
    values = np.array([reaction.function(float(u)) for u in grid])
    if not np.all(values > 0):
        bad = grid[np.argmin(values)]
        raise InvalidReaction(f"F must be positive on [theta_hl, theta_plus), F({bad})<=0")
    return slope


def validate_params(
    q: float,
    h: float,
    theta_ig: float,
    theta_hl: float,
    reaction: Optional[ReactionSpec] = None,
    domain: Optional[tuple[float, float]] = None,
) -> ModelParams:
    """Validates physical parameters and caches theta_plus.

    Raises `NonFinite`, `NonPositiveParameter` or `OrderingViolated` for
    inputs breaking 0 < theta_ig < theta_hl < theta_plus, and
    `InvalidReaction` for a custom reaction breaking its hypotheses.
    """

    if not is_finite(q, h, theta_ig, theta_hl):
        raise NonFinite(
            f"parameters must be finite, got q={q}, h={h}, theta_ig={theta_ig}, theta_hl={theta_hl}",
        )
    if q <= 0 or h <= 0 or theta_ig <= 0:
        raise NonPositiveParameter(
            f"q, h and theta_ig must be positive, got q={q}, h={h}, theta_ig={theta_ig}",
        )
    if theta_ig >= theta_hl:
        raise OrderingViolated(
            f"ordering 0 < theta_ig < theta_hl < theta_plus violated: theta_ig={theta_ig} >= theta_hl={theta_hl}",
        )

    reaction = reaction or ReactionSpec()
    if reaction.kind == ReactionKind.QUARTIC:
        theta_p = quartic_theta_plus(q, h)
    else:
        theta_p = _custom_theta_plus(reaction)

    if theta_hl >= theta_p:
        raise OrderingViolated(
            f"ordering 0 < theta_ig < theta_hl < theta_plus violated: theta_hl={theta_hl} >= theta_plus={theta_p}",
        )

    if reaction.kind == ReactionKind.QUARTIC:
        slope = -4.0 * h * (1.0 + theta_p) ** 3
        domain = domain or default_domain(theta_hl, theta_p)
    else:
        slope = _check_custom_reaction(reaction, theta_hl, theta_p)
        domain = domain or reaction.bracket

    assert domain is not None
    if not domain[0] <= theta_hl or not domain[1] > theta_p:
        raise InvalidReaction(f"W={domain} must contain [theta_hl, theta_plus]")

    _LOGGER.debug("Validated params q=%s h=%s theta_plus=%s", q, h, theta_p)
    return ModelParams.from_values(
        q=float(q),
        h=float(h),
        theta_ig=float(theta_ig),
        theta_hl=float(theta_hl),
        theta_plus=theta_p,
        f_prime_plus=slope,
        domain=(float(domain[0]), float(domain[1])),
        reaction=reaction,
    )


def _check_domain(params: ModelParams, u: ArrayLike) -> None:
    lo, hi = params.domain
    values = np.asarray(u, dtype=float)
    if np.any(~np.isfinite(values)) or np.any(values < lo) or np.any(values > hi):
        raise OutOfDomain(f"u outside W=[{lo}, {hi}]")


def _as_output(values: np.ndarray, like: ArrayLike) -> ArrayLike:
    return float(values) if np.ndim(like) == 0 else values


def restricted_callables(
    params: ModelParams,
) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """Unchecked scalar F and F' for integrator right-hand sides."""

    if params.reaction.is_quartic:
        q, h = params.q, params.h

        def quartic(u: float) -> float:
            return q - h * ((1.0 + u) ** 4 - 1.0)

        def quartic_prime(u: float) -> float:
            return -4.0 * h * (1.0 + u) ** 3

        return quartic, quartic_prime

    assert params.reaction.function is not None
    assert params.reaction.derivative is not None
    return params.reaction.function, params.reaction.derivative


def _evaluate(func: Callable[[float], float], u: ArrayLike) -> np.ndarray:
    values = np.asarray(u, dtype=float)
    if values.ndim == 0:
        return np.asarray(func(float(values)), dtype=float)
    return np.array([func(float(x)) for x in values.ravel()]).reshape(values.shape)


def reaction_restricted(
    params: ModelParams,
    u: ArrayLike,
    check_domain: bool = True,
) -> ArrayLike:
    """F(u) = q - h((1+u)^4 - 1), or the custom handle."""

    if check_domain:
        _check_domain(params, u)
    if params.reaction.is_quartic:
        values = params.q - params.h * ((1.0 + np.asarray(u, dtype=float)) ** 4 - 1.0)
    else:
        values = _evaluate(restricted_callables(params)[0], u)
    return _as_output(values, u)


def reaction_derivative(
    params: ModelParams,
    u: ArrayLike,
    check_domain: bool = True,
) -> ArrayLike:
    if check_domain:
        _check_domain(params, u)
    if params.reaction.is_quartic:
        values = -4.0 * params.h * (1.0 + np.asarray(u, dtype=float)) ** 3
    else:
        values = _evaluate(restricted_callables(params)[1], u)
    return _as_output(values, u)


def reaction_full(params: ModelParams, theta: ArrayLike) -> ArrayLike:
    """Piecewise reaction qH(theta - theta_ig) - h((1+theta)^4 - 1)H(theta - theta_hl).

    Uses H(0) = 1 at both thresholds. For a custom F the heat-loss branch
    is F itself.
    """

    values = np.asarray(theta, dtype=float)
    hot = values >= params.theta_hl
    warm = values >= params.theta_ig
    if params.reaction.is_quartic:
        loss = params.h * ((1.0 + values) ** 4 - 1.0)
        result = np.where(warm, params.q, 0.0) - np.where(hot, loss, 0.0)
    else:
        result = np.where(warm, params.q, 0.0)
        if np.any(hot):
            result = np.array(result, dtype=float)
            result[hot] = _evaluate(restricted_callables(params)[0], values[hot])
    return _as_output(np.asarray(result, dtype=float), theta)


def _quad_reaction(params: ModelParams, lo: float, hi: float) -> float:
    func = restricted_callables(params)[0]
    value, _ = integrate.quad(
        func,
        lo,
        hi,
        epsabs=params.reaction.quad_epsabs,
        epsrel=params.reaction.quad_epsrel,
        limit=200,
    )
    return float(value)


def potential_U(params: ModelParams, u: ArrayLike) -> ArrayLike:
    """U(u) = integral of F from theta_hl to u."""

    _check_domain(params, u)
    if params.reaction.is_quartic:
        q, h, hl = params.q, params.h, params.theta_hl
        values = np.asarray(u, dtype=float)
        result = (q + h) * (values - hl) - (h / 5.0) * (
            (1.0 + values) ** 5 - (1.0 + hl) ** 5
        )
    else:
        result = np.array(
            [_quad_reaction(params, params.theta_hl, float(x)) for x in np.ravel(u)],
        ).reshape(np.shape(u))
    return _as_output(np.asarray(result, dtype=float), u)


def potential_drop(params: ModelParams, u: ArrayLike) -> ArrayLike:
    """U(theta_plus) - U(u) without cancellation near the saddle.

    For the quartic law h(1+theta_plus)^4 = q + h, so the drop factors as
    (h/5) d^2 (4a^3 + 3a^2 b + 2a b^2 + b^3) with a = 1+theta_plus,
    b = 1+u and d = theta_plus - u.
    """

    _check_domain(params, u)
    if params.reaction.is_quartic:
        values = np.asarray(u, dtype=float)
        a = 1.0 + params.theta_plus
        b = 1.0 + values
        d = params.theta_plus - values
        result = (params.h / 5.0) * d * d * (4 * a**3 + 3 * a * a * b + 2 * a * b * b + b**3)
    else:
        result = np.array(
            [_quad_reaction(params, float(x), params.theta_plus) for x in np.ravel(u)],
        ).reshape(np.shape(u))
    return _as_output(np.asarray(result, dtype=float), u)


def hamiltonian_level(params: ModelParams, u: ArrayLike) -> ArrayLike:
    """v0(u) = sqrt(2(U(theta_plus) - U(u))), the c = 0 separatrix."""

    drop = np.maximum(np.asarray(potential_drop(params, u), dtype=float), 0.0)
    return _as_output(np.sqrt(2.0 * drop), u)
