from __future__ import annotations

import math

import numpy as np
import pytest

from ignifront.data import ModelParams
from ignifront.exceptions import OutOfRange, SpeedNonPositive
from ignifront.explicit_region import (
    G,
    G_partials,
    classify_pair,
    expm1_minus_linear,
    flux_at_R,
    preheat_profile,
)
from ignifront.phi_curve import critical_constants, critical_point, sample_phi
from tests.conftest import random_params


def test_expm1_minus_linear():
    assert expm1_minus_linear(0.0) == 0.0
    z = 1e-5
    assert expm1_minus_linear(z) == pytest.approx(z * z / 2 + z**3 / 6, rel=1e-12)
    assert expm1_minus_linear(-0.05) == pytest.approx(math.exp(-0.05) - 1 + 0.05, rel=1e-11)
    assert expm1_minus_linear(2.0) == pytest.approx(math.exp(2.0) - 3.0, rel=1e-14)


def test_preheat_profile_at_ignition(standard: ModelParams):
    c = 1.7
    theta, theta_x = preheat_profile(standard, c, 0.3, 0.0)
    assert theta == pytest.approx(standard.theta_ig, rel=1e-15)
    assert theta_x == pytest.approx(c * standard.theta_ig, rel=1e-15)


def test_preheat_profile_left_branch(standard: ModelParams):
    c = 2.0
    x = np.linspace(-5.0, -0.1, 20)
    theta, theta_x = preheat_profile(standard, c, 0.3, x)
    expected = standard.theta_ig * np.exp(c * x)
    np.testing.assert_allclose(theta, expected, rtol=1e-15)
    np.testing.assert_allclose(theta_x, c * expected, rtol=1e-15)


def test_preheat_profile_reacting_branch(standard: ModelParams):
    c, R = 2.0, 0.4
    x = np.linspace(0.0, R, 41)
    theta, theta_x = preheat_profile(standard, c, R, x)
    q, ig = standard.q, standard.theta_ig
    expected = ig * np.exp(c * x) + (q / c) * x - (q / c**2) * (np.exp(c * x) - 1.0)
    np.testing.assert_allclose(theta, expected, rtol=1e-13)

    # theta_xx - c theta_x + q = 0 on the reacting branch
    theta_xx = c * c * ig * np.exp(c * x) - q * np.exp(c * x)
    np.testing.assert_allclose(theta_xx - c * theta_x + q, 0.0, atol=1e-13)


def test_preheat_profile_errors(standard: ModelParams):
    with pytest.raises(SpeedNonPositive):
        preheat_profile(standard, 0.0, 0.3, 0.1)
    with pytest.raises(SpeedNonPositive):
        preheat_profile(standard, -1.0, 0.3, 0.1)
    with pytest.raises(OutOfRange):
        preheat_profile(standard, 1.0, 0.3, np.array([0.1, 0.31]))


def test_G_vanishes_at_anchor(rng: np.random.Generator):
    for _ in range(1000):
        params = random_params(rng)
        a, b, _ = critical_constants(params)
        scale = max(params.q * math.exp(a * b), b * b * params.theta_hl)
        assert abs(G(params, a, b)) <= 1e-12 * scale


def test_G_matches_interface_temperature(standard: ModelParams):
    for R, c in [(0.1, 3.0), (0.3, 1.5), (0.5, 2.2), (1.0, 0.7)]:
        theta_R, _ = preheat_profile(standard, c, R, R)
        assert c * c * (theta_R - standard.theta_hl) == pytest.approx(
            -G(standard, R, c),
            abs=1e-13,
        )


def test_G_partials(standard: ModelParams):
    for R, c in [(0.1, 3.0), (0.3, 1.5), (0.5, 2.2)]:
        dG_dR, dG_dc = G_partials(standard, R, c)
        step = 1e-6
        fd_R = (G(standard, R + step, c) - G(standard, R - step, c)) / (2 * step)
        fd_c = (G(standard, R, c + step) - G(standard, R, c - step)) / (2 * step)
        assert dG_dR == pytest.approx(fd_R, rel=1e-6, abs=1e-9)
        assert dG_dc == pytest.approx(fd_c, rel=1e-6, abs=1e-9)


def test_flux_and_classification(standard: ModelParams):
    q, hl = standard.q, standard.theta_hl
    assert flux_at_R(standard, 0.3, 2.0) == pytest.approx(2.0 * hl - q * 0.3)

    inside = classify_pair(standard, 0.3, 2.0)
    assert inside.in_Q_plus
    assert not inside.on_boundary
    assert inside.flux > 0

    R = 0.5
    boundary = classify_pair(standard, R, q * R / hl)
    assert boundary.in_Q_plus
    assert boundary.on_boundary

    outside = classify_pair(standard, R, 0.5 * q * R / hl)
    assert not outside.in_Q_plus
    assert not outside.on_boundary


def test_G_partials_at_anchor(narrow: ModelParams):
    a, b, _ = critical_constants(narrow)
    dG_dR, dG_dc = G_partials(narrow, a, b)
    assert dG_dR < 0
    assert dG_dc < 0


def test_level_set_properties(narrow: ModelParams):
    critical = critical_point(narrow)
    samples = sample_phi(narrow, np.geomspace(1e-3 * critical.R0, 0.95 * critical.R0, 40), critical)

    for R, c in samples.points:
        flux = flux_at_R(narrow, R, c)
        assert flux > 0

        dG_dR, dG_dc = G_partials(narrow, R, c)
        assert dG_dR < 0
        assert dG_dc < 0
        # on G = 0 the R-partial reduces to -c^2 times the interface flux
        assert dG_dR == pytest.approx(-c * c * flux, rel=1e-6)

        theta_R, theta_x_R = preheat_profile(narrow, c, R, R)
        assert theta_R == pytest.approx(narrow.theta_hl, abs=1e-10)
        assert theta_x_R == pytest.approx(flux, abs=1e-10 * max(1.0, c))

        x = np.linspace(-5.0 / c, R, 64)
        theta, _ = preheat_profile(narrow, c, R, x)
        assert np.all(np.diff(theta) > 0)
