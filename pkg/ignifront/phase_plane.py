"""The system X_c: u' = v, v' = cv - F(u), its saddle and stable separatrix."""

from __future__ import annotations

from functools import lru_cache
import logging
import math
from typing import Optional, Union

import numpy as np
from scipy import integrate

from ignifront.data import (
    IntegratorMethod,
    ModelParams,
    PhasePortrait,
    SaddleData,
    SeparatrixOptions,
    SeparatrixTrajectory,
    SingularPoint,
    SingularPointKind,
)
from ignifront.exceptions import (
    ExtrapolationBeyondTail,
    OutOfRange,
    SeedTooLarge,
    SpeedNonPositive,
    TailEstimateUnreliable,
    ToleranceFailure,
)
from ignifront.model import hamiltonian_level, restricted_callables
from ignifront.utils import is_debug

_LOGGER = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

MAX_DECAY = 745.0
NEWTON_STEPS = 40
TAIL_SEED_FACTOR = 10.0
CACHE_SIZE = 4096
DEFAULT_GRID = (41, 41)
TRIANGLE_POINTS = 65


def _require_speed(c: float) -> None:
    if not math.isfinite(c) or c < 0:
        raise SpeedNonPositive(f"speed must be finite and >= 0, got c={c}")


def saddle_eigen(params: ModelParams, c: float) -> SaddleData:
    """Eigenvalues (c -+ sqrt(c^2 - 4F'(theta_plus)))/2 and eigenvectors (1, lambda)."""

    _require_speed(c)
    slope = params.f_prime_plus
    gap = math.sqrt(c * c - 4.0 * slope)
    lambda_plus = 0.5 * (c + gap)
    lambda_minus = 2.0 * slope / (c + gap)
    return SaddleData.from_values(
        c=c,
        location=(params.theta_plus, 0.0),
        lambda_minus=lambda_minus,
        lambda_plus=lambda_plus,
        stable_dir=(1.0, lambda_minus),
        unstable_dir=(1.0, lambda_plus),
    )


def vector_field(
    params: ModelParams,
    c: float,
    u: ArrayLike,
    v: ArrayLike,
) -> tuple[ArrayLike, ArrayLike]:
    """(u', v') = (v, cv - F(u))."""

    F = restricted_callables(params)[0]
    u_arr = np.asarray(u, dtype=float)
    if params.reaction.is_quartic:
        f = F(u_arr)  # type: ignore[arg-type]
    else:
        f = np.vectorize(F, otypes=[float])(u_arr)
    dv = c * np.asarray(v, dtype=float) - f
    if np.ndim(u) == 0 and np.ndim(v) == 0:
        return float(v), float(dv)
    return np.broadcast_to(np.asarray(v, dtype=float), np.shape(dv)).copy(), dv


def _select_method(params: ModelParams, c: float, options: SeparatrixOptions) -> IntegratorMethod:
    if options.method != IntegratorMethod.AUTO:
        return options.method
    if c * c > options.stiffness_ratio * abs(params.f_prime_plus):
        return IntegratorMethod.RADAU
    return IntegratorMethod.DOP853


def separatrix(
    params: ModelParams,
    c: float,
    options: Optional[SeparatrixOptions] = None,
) -> SeparatrixTrajectory:
    """Stable separatrix of (theta_plus, 0) as the graph v = v_c(u).

    Integrates dv/du = c - F(u)/v together with dtau/du = 1/v backward in u
    from the seed (theta_plus - eps, |lambda_minus| eps) on the linearized
    stable direction down to u = theta_hl.
    """

    _require_speed(c)
    options = options or SeparatrixOptions()
    saddle = saddle_eigen(params, c)
    eps = options.seed_offset(params.delta)
    if not 0 < eps < params.delta:
        raise SeedTooLarge(f"seed offset {eps} must lie in (0, {params.delta})")

    u_seed = params.theta_plus - eps
    v_seed = abs(saddle.lambda_minus) * eps
    F = restricted_callables(params)[0]

    def rhs(u: float, y: np.ndarray) -> list[float]:
        v = y[0]
        return [c - F(u) / v, 1.0 / v]

    def jac(u: float, y: np.ndarray) -> np.ndarray:
        v2 = y[0] * y[0]
        return np.array([[F(u) / v2, 0.0], [-1.0 / v2, 0.0]])

    def hits_axis(u: float, y: np.ndarray) -> float:
        return float(y[0])

    hits_axis.terminal = True  # type: ignore[attr-defined]

    method = _select_method(params, c, options)
    extra = {"jac": jac} if method == IntegratorMethod.RADAU else {}
    sol = integrate.solve_ivp(
        rhs,
        (u_seed, params.theta_hl),
        [v_seed, 0.0],
        method=method.value,
        rtol=options.rtol,
        atol=options.atol,
        dense_output=True,
        events=hits_axis,
        first_step=eps * 1e-2,
        **extra,
    )

    if sol.status == 1:
        raise SeedTooLarge(f"separatrix hit v=0 at u={sol.t[-1]} before theta_hl (c={c})")
    if sol.status != 0:
        if sol.y[0, -1] <= 0:
            raise SeedTooLarge(f"separatrix left the basin at u={sol.t[-1]} (c={c})")
        raise ToleranceFailure(f"separatrix integration failed at c={c}: {sol.message}")

    u = sol.t[::-1].copy()
    v = sol.y[0][::-1].copy()
    tau = sol.y[1][::-1].copy()
    if not np.all(v > 0):
        raise SeedTooLarge(f"separatrix has v <= 0 samples (c={c})")

    tau_hl = float(tau[0])
    t = tau - tau_hl
    _LOGGER.debug(
        "Separatrix c=%s via %s: %s samples, %s evaluations, v_hl=%s",
        c,
        method.value,
        len(u),
        sol.nfev,
        v[0],
    )

    if is_debug():
        v0_hl = float(hamiltonian_level(params, params.theta_hl))
        if v[0] > v0_hl * (1.0 + 1e-8):
            raise ToleranceFailure(f"v_hl={v[0]} above the Hamiltonian level {v0_hl}")

    return SeparatrixTrajectory.from_values(
        c=c,
        t=t,
        u=u,
        v=v,
        v_hl=float(v[0]),
        tau_hl=tau_hl,
        t_end=float(t[-1]),
        epsilon_seed=eps,
        theta_plus=params.theta_plus,
        theta_hl=params.theta_hl,
        saddle=saddle,
        method=method,
        nfev=int(sol.nfev),
        dense=sol.sol,
    )


@lru_cache(maxsize=CACHE_SIZE)
def _cached_v_hl(params: ModelParams, c: float, options: SeparatrixOptions) -> float:
    return separatrix(params, c, options).v_hl


def v_at_hl(
    params: ModelParams,
    c: float,
    options: Optional[SeparatrixOptions] = None,
) -> float:
    """v_c(theta_hl), memoized per (params, c, options)."""

    return _cached_v_hl(params, float(c), options or SeparatrixOptions())


def clear_cache() -> None:
    _cached_v_hl.cache_clear()


def separatrix_v(trajectory: SeparatrixTrajectory, u: ArrayLike) -> ArrayLike:
    """v_c(u) on [theta_hl, u_end] from the dense output."""

    values = np.asarray(u, dtype=float)
    if np.any(values < trajectory.theta_hl) or np.any(values > trajectory.u_end):
        raise OutOfRange(f"u must lie in [{trajectory.theta_hl}, {trajectory.u_end}]")
    return trajectory.v_of_u(u)


def orbit_at_time(
    trajectory: SeparatrixTrajectory,
    t: ArrayLike,
) -> tuple[ArrayLike, ArrayLike]:
    """(u, v) on the separatrix at time t >= 0 with t = 0 at theta_hl.

    Inverts t(u) by Newton iterations in w = -ln(theta_plus - u), where t is
    nearly affine. Beyond the last sample the linearized saddle flow
    u = theta_plus + (u_end - theta_plus) e^{lambda_minus (t - t_end)} is used.
    """

    times = np.atleast_1d(np.asarray(t, dtype=float))
    if not np.all(np.isfinite(times)):
        raise ExtrapolationBeyondTail("orbit time must be finite")
    if np.any(times < 0):
        raise OutOfRange("orbit time must be >= 0 (t = 0 at theta_hl)")

    lam = trajectory.lambda_minus
    overshoot = times - trajectory.t_end
    if np.any(lam * overshoot < -MAX_DECAY):
        raise ExtrapolationBeyondTail(
            f"t={times.max()} beyond the saddle patch (t_end={trajectory.t_end})",
        )

    theta_p = trajectory.theta_plus
    u_out = np.empty_like(times)
    v_out = np.empty_like(times)

    inside = overshoot <= 0
    if np.any(inside):
        target = times[inside]
        w_samples = -np.log(theta_p - trajectory.u)
        w = np.interp(target, trajectory.t, w_samples)
        for _ in range(NEWTON_STEPS):
            u = theta_p - np.exp(-w)
            v, tau = trajectory.dense(np.clip(u, trajectory.theta_hl, trajectory.u_end))
            step = (tau - trajectory.tau_hl - target) * v / (theta_p - u)
            w = np.clip(w - step, w_samples[0], w_samples[-1])
            if np.max(np.abs(step)) <= 1e-15 * max(1.0, float(np.max(np.abs(w)))):
                break
        u = np.clip(theta_p - np.exp(-w), trajectory.theta_hl, trajectory.u_end)
        u_out[inside] = u
        v_out[inside] = trajectory.dense(u)[0]
        u_out[inside & (times == 0)] = trajectory.theta_hl
        v_out[inside & (times == 0)] = trajectory.v_hl

    beyond = ~inside
    if np.any(beyond):
        decay = np.exp(lam * overshoot[beyond])
        u_out[beyond] = theta_p + (trajectory.u_end - theta_p) * decay
        v_out[beyond] = trajectory.v_end * decay

    if np.ndim(t) == 0:
        return float(u_out[0]), float(v_out[0])
    return u_out.reshape(np.shape(t)), v_out.reshape(np.shape(t))


def melnikov_dvdc(
    params: ModelParams,
    c: float,
    u_bar: Optional[float] = None,
    trajectory: Optional[SeparatrixTrajectory] = None,
    options: Optional[SeparatrixOptions] = None,
) -> float:
    """d v_c(u_bar) / dc from the Melnikov integral along the separatrix.

    -(1/v(u_bar)) times the integral over t >= 0 of e^{-ct} v^2(t + t(u_bar)),
    evaluated in u on the sampled range plus the exact tail of the
    linearized flow, I(T) / (c - 2 lambda_minus).
    """

    trajectory = trajectory or separatrix(params, c, options)
    u_bar = params.theta_hl if u_bar is None else u_bar
    if not params.theta_hl <= u_bar < params.theta_plus:
        raise OutOfRange(f"u_bar must lie in [theta_hl, theta_plus), got {u_bar}")
    if u_bar >= trajectory.u_end:
        raise OutOfRange(f"u_bar={u_bar} lies past the last separatrix sample")

    # the tail formula needs the last sample inside the linear patch of this saddle
    lam = trajectory.lambda_minus
    eps = (options or SeparatrixOptions()).seed_offset(params.delta)
    distance = max(abs(params.theta_plus - trajectory.u_end), trajectory.v_end / max(1.0, abs(lam)))
    if distance > TAIL_SEED_FACTOR * eps:
        raise TailEstimateUnreliable(f"trajectory ends {distance} from the saddle (seed {eps})")

    t_bar = float(trajectory.t_of_u(u_bar))
    v_bar = float(trajectory.v_of_u(u_bar))
    dense = trajectory.dense
    tau_hl = trajectory.tau_hl

    def integrand(u: float) -> float:
        v, tau = dense(u)
        return math.exp(-c * (tau - tau_hl - t_bar)) * v

    body, _ = integrate.quad(integrand, u_bar, trajectory.u_end, epsabs=1e-14, epsrel=1e-11, limit=400)
    last = math.exp(-c * (trajectory.t_end - t_bar)) * trajectory.v_end**2
    tail = last / (c - 2.0 * lam)
    return -(body + tail) / v_bar


def finite_difference_dvdc(
    params: ModelParams,
    c: float,
    delta: Optional[float] = None,
    options: Optional[SeparatrixOptions] = None,
) -> float:
    """Finite-difference d v_hl / dc, central where c - delta >= 0, one-sided second order below."""

    delta = 1e-4 * max(1.0, c) if delta is None else delta
    if c - delta >= 0:
        return (v_at_hl(params, c + delta, options) - v_at_hl(params, c - delta, options)) / (2 * delta)
    return (
        -3.0 * v_at_hl(params, c, options)
        + 4.0 * v_at_hl(params, c + delta, options)
        - v_at_hl(params, c + 2 * delta, options)
    ) / (2 * delta)


def singular_points(params: ModelParams, c: float) -> tuple[SingularPoint, ...]:
    """Equilibria of X_c on the u-axis with their linear type."""

    saddle = saddle_eigen(params, c)
    lo, hi = params.domain
    points = [
        SingularPoint.from_values(
            u=params.theta_plus,
            v=0.0,
            kind=SingularPointKind.SADDLE,
            eigen_real=(saddle.lambda_minus, saddle.lambda_plus),
            eigen_imag=(0.0, 0.0),
            in_domain=True,
        ),
    ]
    if not params.reaction.is_quartic:
        return tuple(points)

    # second zero of the quartic law, u = -1 - (1 + q/h)^(1/4)
    u_minus = -2.0 - params.theta_plus
    slope = 4.0 * params.h * (1.0 + params.theta_plus) ** 3
    disc = c * c - 4.0 * slope
    if disc < 0:
        root = 0.5 * math.sqrt(-disc)
        kind = SingularPointKind.CENTER if c == 0 else SingularPointKind.UNSTABLE_FOCUS
        real, imag = (0.5 * c, 0.5 * c), (-root, root)
    else:
        root = 0.5 * math.sqrt(disc)
        kind = SingularPointKind.UNSTABLE_NODE
        real, imag = (0.5 * c - root, 0.5 * c + root), (0.0, 0.0)
    points.append(
        SingularPoint.from_values(
            u=u_minus,
            v=0.0,
            kind=kind,
            eigen_real=real,
            eigen_imag=imag,
            in_domain=lo <= u_minus <= hi,
        ),
    )
    return tuple(points)


def default_window(params: ModelParams) -> tuple[float, float, float, float]:
    v0_hl = float(hamiltonian_level(params, params.theta_hl))
    delta = params.delta
    return (
        params.theta_hl - 0.05 * delta,
        params.theta_plus + 0.25 * delta,
        -0.25 * v0_hl,
        1.25 * v0_hl,
    )


def phase_portrait(
    params: ModelParams,
    c: float,
    window: Optional[tuple[float, float, float, float]] = None,
    grid: tuple[int, int] = DEFAULT_GRID,
    with_separatrix: bool = True,
    options: Optional[SeparatrixOptions] = None,
) -> PhasePortrait:
    """Direction field of X_c on (u_min, u_max, v_min, v_max) and the triangle [p0, p1, p2].

    p0 = (theta_hl, 0), p1 = (theta_plus, 0) and p2 = (theta_hl, v0(theta_hl));
    the curved side is the c = 0 separatrix v0(u).
    """

    _require_speed(c)
    window = window or default_window(params)
    u_min, u_max, v_min, v_max = window
    nu, nv = grid
    if not (u_min < u_max and v_min < v_max):
        raise OutOfRange(f"invalid portrait window {window}")
    if nu < 2 or nv < 2:
        raise OutOfRange(f"portrait grid needs at least 2x2 points, got {grid}")

    U, V = np.meshgrid(np.linspace(u_min, u_max, nu), np.linspace(v_min, v_max, nv))
    u_flat, v_flat = U.ravel(), V.ravel()
    du, dv = vector_field(params, c, u_flat, v_flat)

    side_u = np.linspace(params.theta_hl, params.theta_plus, TRIANGLE_POINTS)
    v0_hl = float(hamiltonian_level(params, params.theta_hl))
    left_v = np.linspace(0.0, v0_hl, TRIANGLE_POINTS)
    curved_v = np.asarray(hamiltonian_level(params, side_u), dtype=float)
    triangle_u = np.concatenate([side_u, np.full(TRIANGLE_POINTS, params.theta_hl), side_u])
    triangle_v = np.concatenate([np.zeros(TRIANGLE_POINTS), left_v, curved_v])
    sides = ("bottom",) * TRIANGLE_POINTS + ("left",) * TRIANGLE_POINTS + ("curved",) * TRIANGLE_POINTS

    return PhasePortrait.from_values(
        c=c,
        window=(u_min, u_max, v_min, v_max),
        u=u_flat,
        v=v_flat,
        du=np.asarray(du, dtype=float),
        dv=np.asarray(dv, dtype=float),
        triangle_side=sides,
        triangle_u=triangle_u,
        triangle_v=triangle_v,
        separatrix=separatrix(params, c, options) if with_separatrix else None,
        singular_points=singular_points(params, c),
    )
