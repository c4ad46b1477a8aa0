from __future__ import annotations

import numpy as np
import pytest
from scipy import integrate

from ignifront.data import (
    IntegratorMethod,
    ModelParams,
    SeparatrixOptions,
    SingularPointKind,
)
from ignifront.exceptions import (
    ExtrapolationBeyondTail,
    OutOfRange,
    SeedTooLarge,
    SpeedNonPositive,
    TailEstimateUnreliable,
)
from ignifront.model import hamiltonian_level, potential_U
from ignifront.phase_plane import (
    clear_cache,
    finite_difference_dvdc,
    melnikov_dvdc,
    orbit_at_time,
    phase_portrait,
    saddle_eigen,
    separatrix,
    separatrix_v,
    singular_points,
    v_at_hl,
    vector_field,
)
from tests.conftest import STANDARD_V0_HL, rel_diff


def test_saddle_eigen(standard: ModelParams):
    at_rest = saddle_eigen(standard, 0.0)
    assert at_rest.lambda_minus == pytest.approx(-1.898449, abs=1e-6)
    assert at_rest.lambda_plus == pytest.approx(1.898449, abs=1e-6)

    moving = saddle_eigen(standard, 1.0)
    assert moving.lambda_minus == pytest.approx(-1.463188, abs=1e-6)
    assert moving.lambda_plus == pytest.approx(2.463188, abs=1e-6)
    assert moving.lambda_minus * moving.lambda_plus == pytest.approx(standard.f_prime_plus, rel=1e-14)
    assert moving.stable_dir == (1.0, moving.lambda_minus)
    assert moving.location == (standard.theta_plus, 0.0)
    assert moving.gap == pytest.approx(np.sqrt(1.0 - 4.0 * standard.f_prime_plus), rel=1e-14)

    with pytest.raises(SpeedNonPositive):
        saddle_eigen(standard, -0.5)


def test_separatrix_hamiltonian_case(standard: ModelParams):
    trajectory = separatrix(standard, 0.0)

    expected = hamiltonian_level(standard, trajectory.u)
    assert np.max(np.abs(trajectory.v - expected)) <= 1e-8

    energy = 0.5 * trajectory.v**2 + np.asarray(potential_U(standard, trajectory.u))
    assert np.max(np.abs(energy - energy[0])) <= 1e-8
    assert trajectory.v_hl == pytest.approx(STANDARD_V0_HL, abs=1e-6)


def test_separatrix_samples(standard: ModelParams):
    trajectory = separatrix(standard, 1.0)

    assert trajectory.u[0] == standard.theta_hl
    assert trajectory.t[0] == 0.0
    assert np.all(np.diff(trajectory.u) > 0)
    assert np.all(np.diff(trajectory.t) > 0)
    assert np.all(trajectory.v > 0)
    assert trajectory.t_end == trajectory.t[-1]
    assert standard.theta_plus - trajectory.u_end == pytest.approx(trajectory.epsilon_seed, rel=1e-7)
    assert trajectory.method == IntegratorMethod.DOP853
    assert len(trajectory.rows()) == len(trajectory.u)

    mid = 0.5 * (standard.theta_hl + standard.theta_plus)
    assert separatrix_v(trajectory, mid) == pytest.approx(trajectory.v_of_u(mid))
    with pytest.raises(OutOfRange):
        separatrix_v(trajectory, standard.theta_plus)


def test_separatrix_below_hamiltonian_level(standard: ModelParams):
    v0 = hamiltonian_level(standard, standard.theta_hl)
    previous = v0
    for c in [0.5, 1.0, 2.0, 3.0]:
        v_hl = v_at_hl(standard, c)
        assert 0 < v_hl < previous
        previous = v_hl


def test_separatrix_seed_robustness(standard: ModelParams):
    options = SeparatrixOptions().tightened(10)
    base = separatrix(standard, 1.0, options)
    halved = separatrix(standard, 1.0, options.with_seed(0.5 * base.epsilon_seed))
    assert rel_diff(halved.v_hl, base.v_hl) <= 1e-9


def test_separatrix_seed_too_large(standard: ModelParams):
    with pytest.raises(SeedTooLarge):
        separatrix(standard, 1.0, SeparatrixOptions(epsilon_seed=2.0 * standard.delta))


def test_separatrix_stiff_switch(standard: ModelParams):
    stiff = separatrix(standard, 20.0)
    assert stiff.method == IntegratorMethod.RADAU

    explicit = separatrix(standard, 20.0, SeparatrixOptions(method=IntegratorMethod.DOP853))
    assert explicit.method == IntegratorMethod.DOP853
    assert rel_diff(stiff.v_hl, explicit.v_hl) <= 1e-7


def test_v_at_hl_cache(standard: ModelParams):
    clear_cache()
    first = v_at_hl(standard, 1.25)
    assert v_at_hl(standard, 1.25) == first
    assert first == separatrix(standard, 1.25).v_hl


def test_melnikov_matches_finite_differences(standard: ModelParams):
    for c in np.linspace(0.0, 3.0, 10).tolist():
        trajectory = separatrix(standard, c)
        exact = melnikov_dvdc(standard, c, trajectory=trajectory)
        approx = finite_difference_dvdc(standard, c)
        assert exact < 0
        assert rel_diff(exact, approx) <= 1e-4


def test_melnikov_interior_point(standard: ModelParams):
    u_bar = 0.3
    c = 1.0
    exact = melnikov_dvdc(standard, c, u_bar=u_bar)
    delta = 1e-4
    approx = (
        separatrix(standard, c + delta).v_of_u(u_bar) - separatrix(standard, c - delta).v_of_u(u_bar)
    ) / (2 * delta)
    assert exact < 0
    assert rel_diff(exact, approx) <= 1e-4

    with pytest.raises(OutOfRange):
        melnikov_dvdc(standard, c, u_bar=0.1)


def test_orbit_at_time(standard: ModelParams):
    trajectory = separatrix(standard, 1.0)

    u0, v0 = orbit_at_time(trajectory, 0.0)
    assert u0 == standard.theta_hl
    assert v0 == trajectory.v_hl

    inner = trajectory.t[1:-1:7]
    u, v = orbit_at_time(trajectory, inner)
    np.testing.assert_allclose(u, trajectory.u[1:-1:7], rtol=0, atol=1e-10)
    np.testing.assert_allclose(v, trajectory.v[1:-1:7], rtol=0, atol=1e-9)

    times = np.linspace(0.0, trajectory.t_end + 5.0, 400)
    u, v = orbit_at_time(trajectory, times)
    assert np.all(np.diff(u) > 0)
    assert np.all(u < standard.theta_plus)

    # du/dt = v along the orbit
    step = 1e-5
    for t in [0.5, 2.0, 4.0]:
        u_plus, _ = orbit_at_time(trajectory, t + step)
        u_minus, _ = orbit_at_time(trajectory, t - step)
        _, v_mid = orbit_at_time(trajectory, t)
        assert (u_plus - u_minus) / (2 * step) == pytest.approx(v_mid, rel=1e-6)


def test_orbit_at_time_errors(standard: ModelParams):
    trajectory = separatrix(standard, 1.0)
    with pytest.raises(OutOfRange):
        orbit_at_time(trajectory, -1.0)
    with pytest.raises(ExtrapolationBeyondTail):
        orbit_at_time(trajectory, trajectory.t_end + 1000.0)
    with pytest.raises(ExtrapolationBeyondTail):
        orbit_at_time(trajectory, np.inf)


def test_vector_field(standard: ModelParams):
    assert vector_field(standard, 1.0, standard.theta_plus, 0.0) == pytest.approx((0.0, 0.0), abs=1e-12)
    du, dv = vector_field(standard, 2.0, 0.3, 0.1)
    assert du == 0.1
    assert dv == pytest.approx(0.2 - (1.0 - 0.3 * (1.3**4 - 1.0)))


def test_singular_points(standard: ModelParams):
    at_rest = singular_points(standard, 0.0)
    assert [p.kind for p in at_rest] == [SingularPointKind.SADDLE, SingularPointKind.CENTER]
    second = at_rest[1]
    assert second.u == pytest.approx(-1.0 - (1.0 + 1.0 / 0.3) ** 0.25, rel=1e-14)
    assert not second.in_domain
    assert second.eigen_real == (0.0, 0.0)
    assert second.eigen_imag[1] > 0

    assert singular_points(standard, 1.0)[1].kind == SingularPointKind.UNSTABLE_FOCUS
    node = singular_points(standard, 4.0)[1]
    assert node.kind == SingularPointKind.UNSTABLE_NODE
    assert min(node.eigen_real) > 0


def test_phase_portrait(standard: ModelParams):
    portrait = phase_portrait(standard, 1.0, grid=(11, 9))

    assert len(portrait.u) == 99
    np.testing.assert_array_equal(portrait.du, portrait.v)
    assert len(portrait.field_rows()) == 99
    assert portrait.separatrix is not None
    assert portrait.separatrix.c == 1.0
    assert len(portrait.singular_points) == 2

    sides = [row[0] for row in portrait.triangle_rows()]
    assert set(sides) == {"bottom", "left", "curved"}
    curved = portrait.triangle_v[np.array(sides) == "curved"]
    assert curved[0] == pytest.approx(STANDARD_V0_HL, abs=1e-6)
    assert curved[-1] == 0.0

    u_min, u_max, v_min, v_max = portrait.window
    assert u_min < standard.theta_hl < standard.theta_plus < u_max
    assert v_min < 0 < STANDARD_V0_HL < v_max

    with pytest.raises(OutOfRange):
        phase_portrait(standard, 1.0, window=(0.3, 0.2, 0.0, 1.0))


@pytest.mark.parametrize("c", [0.5, 1.0, 3.0])
def test_separatrix_below_hamiltonian_graph(standard: ModelParams, c: float):
    trajectory = separatrix(standard, c)
    v0 = np.asarray(hamiltonian_level(standard, trajectory.u))
    assert np.all(trajectory.v <= v0 + 1e-12)
    assert trajectory.v_end <= 2.0 * trajectory.epsilon_seed * abs(trajectory.lambda_minus)


def test_melnikov_at_rest_matches_area(standard: ModelParams):
    area, _ = integrate.quad(
        lambda u: float(hamiltonian_level(standard, u)),
        standard.theta_hl,
        standard.theta_plus,
        epsabs=1e-14,
        epsrel=1e-12,
    )
    expected = -area / float(hamiltonian_level(standard, standard.theta_hl))
    assert rel_diff(melnikov_dvdc(standard, 0.0), expected) <= 1e-8


def test_melnikov_rejects_coarse_tail(standard: ModelParams):
    options = SeparatrixOptions()
    coarse_options = options.with_seed(100.0 * options.seed_offset(standard.delta))
    coarse = separatrix(standard, 1.0, coarse_options)

    with pytest.raises(TailEstimateUnreliable):
        melnikov_dvdc(standard, 1.0, trajectory=coarse)
    assert melnikov_dvdc(standard, 1.0, trajectory=coarse, options=coarse_options) < 0
