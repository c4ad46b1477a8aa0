"""Finite-difference cross-check of the front: lab-frame speed and co-moving drift.

The lab-frame equation is theta_t = theta_xx + F_full(theta). The wave
theta*(x + c* t) moves toward -x, so the ignition point x_ig(t) has slope -c*.
"""

from __future__ import annotations

import asyncio
from collections.abc import Sequence
from functools import partial
import logging
import math
from typing import Optional

import numpy as np

from ignifront.data import (
    ConvergenceLevel,
    DriftReport,
    FrontSeries,
    FrontSolution,
    ModelParams,
    SimulationConfig,
    SimulationResult,
    Snapshot,
)
from ignifront.exceptions import FrontLeftDomain, InsufficientData, StabilityViolated
from ignifront.front_solver import eval_front, ignition_point
from ignifront.model import reaction_full

_LOGGER = logging.getLogger(__name__)

MIN_FIT_POINTS = 3
RECENTER_FRACTION = 0.25
MAX_PECLET = 2.0


def _time_stepping(config: SimulationConfig, T: float) -> tuple[float, int]:
    dt = config.time_step
    if dt > 0.5 * config.dx**2:
        raise StabilityViolated(f"dt={dt} exceeds dx^2/2={0.5 * config.dx**2}")
    steps = int(math.ceil(T / dt - 1e-9)) if T > 0 else 0
    return (T / steps if steps else dt), steps


def _laplacian_neumann(theta: np.ndarray, inv_dx2: float) -> np.ndarray:
    lap = np.empty_like(theta)
    lap[1:-1] = (theta[2:] - 2.0 * theta[1:-1] + theta[:-2]) * inv_dx2
    lap[0] = 2.0 * (theta[1] - theta[0]) * inv_dx2
    lap[-1] = 2.0 * (theta[-2] - theta[-1]) * inv_dx2
    return lap


def _source(params: ModelParams, theta: np.ndarray, disabled: bool) -> np.ndarray:
    if disabled:
        return np.zeros_like(theta)
    return np.asarray(reaction_full(params, theta), dtype=float)


def initial_profile(params: ModelParams, x: np.ndarray, w: float) -> np.ndarray:
    """Smoothed step from 0 on the left to theta_plus on the right."""

    return 0.5 * params.theta_plus * (1.0 + np.tanh(x / w))


def _shift_cells(theta: np.ndarray, k: int) -> np.ndarray:
    """Moves the window k cells toward -x, padding with the left state."""

    shifted = np.empty_like(theta)
    shifted[k:] = theta[:-k]
    shifted[:k] = theta[0]
    return shifted


def simulate_lab_frame(params: ModelParams, config: Optional[SimulationConfig] = None) -> SimulationResult:
    """Explicit Euler evolution with Neumann ends, recording x_ig(t).

    With `follow_front` the window is shifted by whole cells whenever the
    ignition point drifts a quarter of the half-length from the center.
    """

    config = config or SimulationConfig()
    dt, steps = _time_stepping(config, config.T)
    dx = config.dx
    x = config.grid()
    theta = initial_profile(params, x, config.w)
    inv_dx2 = 1.0 / (dx * dx)
    out_every = max(1, int(round(config.output_interval / dt)))
    snapshot_steps = {int(round(t / dt)): t for t in config.snapshot_times if 0 <= t <= config.T}

    offset = 0.0
    times: list[float] = []
    positions: list[float] = []
    snapshots: list[Snapshot] = []
    theta_min, theta_max = float(theta.min()), float(theta.max())
    margin = config.boundary_margin

    def record(step: int) -> None:
        local = ignition_point(x, theta, params.theta_ig)
        if local is None:
            raise FrontLeftDomain(f"no theta_ig crossing at t={step * dt}")
        if local < -config.L + margin or local > config.L - margin:
            raise FrontLeftDomain(f"front at x={local + offset} within {margin} of the boundary")
        times.append(step * dt)
        positions.append(local + offset)

    record(0)
    if 0 in snapshot_steps:
        snapshots.append(Snapshot.from_values(time=0.0, x=x + offset, theta=theta.copy()))

    for step in range(1, steps + 1):
        theta = theta + dt * (
            _laplacian_neumann(theta, inv_dx2) + _source(params, theta, config.disable_reaction)
        )
        theta_min = min(theta_min, float(theta.min()))
        theta_max = max(theta_max, float(theta.max()))

        if step % out_every == 0 or step == steps:
            record(step)
            if config.follow_front:
                local = positions[-1] - offset
                if abs(local) > RECENTER_FRACTION * config.L:
                    k = int(round(local / dx))
                    if k < 0:
                        theta = _shift_cells(theta, -k)
                    else:
                        shifted = np.empty_like(theta)
                        shifted[:-k] = theta[k:]
                        shifted[-k:] = theta[-1]
                        theta = shifted
                    offset += k * dx
                    _LOGGER.debug("Recentered window by %s cells at t=%s", k, step * dt)
        if step in snapshot_steps:
            snapshots.append(
                Snapshot.from_values(time=snapshot_steps[step], x=x + offset, theta=theta.copy()),
            )

    _LOGGER.debug("Lab-frame run: %s steps, dt=%s, final x_ig=%s", steps, dt, positions[-1])
    return SimulationResult.from_values(
        config=config,
        series=FrontSeries.from_values(t=np.array(times), x_ig=np.array(positions)),
        x=x + offset,
        theta=theta,
        snapshots=tuple(snapshots),
        offset=offset,
        steps=steps,
        theta_min=theta_min,
        theta_max=theta_max,
    )


def measure_speed(series: FrontSeries, window: float = 0.5) -> float:
    """Minus the least-squares slope of x_ig(t) over the final `window` fraction."""

    if not 0 < window <= 1:
        raise InsufficientData(f"window fraction must lie in (0, 1], got {window}")
    if len(series) < MIN_FIT_POINTS:
        raise InsufficientData(f"need at least {MIN_FIT_POINTS} samples, got {len(series)}")

    t0, t1 = float(series.t[0]), float(series.t[-1])
    mask = series.t >= t1 - window * (t1 - t0)
    if np.count_nonzero(mask) < MIN_FIT_POINTS:
        raise InsufficientData(f"only {np.count_nonzero(mask)} samples in the final window")
    slope = np.polyfit(series.t[mask], series.x_ig[mask], 1)[0]
    return -float(slope)


def comoving_drift(
    params: ModelParams,
    solution: FrontSolution,
    config: Optional[SimulationConfig] = None,
    speed: Optional[float] = None,
    T: Optional[float] = None,
) -> DriftReport:
    """Evolves theta* under theta_t = theta_xx - c theta_x + F_full(theta).

    Ends are held at theta*(+-L). The drift is measured after translating by
    the displacement of the ignition point.
    """

    config = config or SimulationConfig()
    c = solution.c_star if speed is None else speed
    T = config.T if T is None else T
    dt, steps = _time_stepping(config, T)
    dx = config.dx
    if abs(c) * dx > MAX_PECLET:
        raise StabilityViolated(f"cell Peclet number {abs(c) * dx} exceeds {MAX_PECLET}")

    x = config.grid()
    reference, reference_x = eval_front(solution, x)
    assert isinstance(reference, np.ndarray) and isinstance(reference_x, np.ndarray)
    theta = reference.copy()
    inv_dx2 = 1.0 / (dx * dx)
    advect = c / (2.0 * dx)
    theta_min, theta_max = float(theta.min()), float(theta.max())

    for _ in range(steps):
        interior = (
            (theta[2:] - 2.0 * theta[1:-1] + theta[:-2]) * inv_dx2
            - advect * (theta[2:] - theta[:-2])
            + np.asarray(reaction_full(params, theta[1:-1]))
        )
        theta[1:-1] += dt * interior
        theta_min = min(theta_min, float(theta.min()))
        theta_max = max(theta_max, float(theta.max()))

    start = ignition_point(x, reference, params.theta_ig)
    end = ignition_point(x, theta, params.theta_ig)
    if start is None or end is None:
        raise FrontLeftDomain("ignition point left the co-moving window")
    shift = end - start
    aligned = np.asarray(eval_front(solution, x - shift)[0])

    report = DriftReport.from_values(
        T=T,
        speed=c,
        drift=float(np.max(np.abs(theta - aligned))),
        raw_drift=float(np.max(np.abs(theta - reference))),
        offset=shift,
        max_theta_x=float(np.max(reference_x)),
        theta_min=theta_min,
        theta_max=theta_max,
        steps=steps,
    )
    _LOGGER.debug("Co-moving drift %s after %s steps (offset %s)", report.drift, steps, shift)
    return report


def _run_level(params: ModelParams, config: SimulationConfig, window: float) -> float:
    return measure_speed(simulate_lab_frame(params, config).series, window)


async def convergence_study(
    params: ModelParams,
    solution: FrontSolution,
    dxs: Sequence[float],
    config: Optional[SimulationConfig] = None,
) -> list[ConvergenceLevel]:
    """Measured speed on several grids, run concurrently in the default executor."""

    config = config or SimulationConfig()
    loop = asyncio.get_running_loop()
    configs = [config.copy(update={"dx": dx, "dt": None}) for dx in dxs]
    speeds = await asyncio.gather(
        *[loop.run_in_executor(None, partial(_run_level, params, cfg, cfg.window)) for cfg in configs],
    )

    levels: list[ConvergenceLevel] = []
    previous: Optional[tuple[float, float]] = None
    for dx, measured in zip(dxs, speeds):
        error = abs(measured - solution.c_star)
        order = None
        if previous is not None and error > 0 and previous[1] > 0:
            order = math.log(previous[1] / error) / math.log(previous[0] / dx)
        levels.append(
            ConvergenceLevel.from_values(
                dx=dx,
                c_measured=measured,
                error=error,
                rel_error=error / solution.c_star,
                observed_order=order,
            ),
        )
        previous = (dx, error)
    return levels
