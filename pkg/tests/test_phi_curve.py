from __future__ import annotations

import math

import numpy as np
import pytest

from ignifront.data import CurveKind, ModelParams
from ignifront.exceptions import BracketFailure, OutOfRange
from ignifront.explicit_region import G, flux_at_R
from ignifront.model import validate_params
from ignifront.phi_curve import (
    critical_constants,
    critical_equation,
    critical_point,
    default_phi_grid,
    extrapolate_m,
    m_limit,
    phi,
    safeguarded_newton,
    sample_phi,
)
from ignifront.utils import count_sign_changes


def test_critical_constants_closed_form(narrow: ModelParams):
    a, b, c_tilde = critical_constants(narrow)
    assert c_tilde == pytest.approx(1.0, abs=1e-12)
    assert b == pytest.approx(math.sqrt(5.0), abs=1e-12)
    assert a == pytest.approx(0.111803, abs=1e-6)


def test_critical_constants_standard(standard: ModelParams):
    _, b, c_tilde = critical_constants(standard)
    assert c_tilde == pytest.approx(math.sqrt(5.0), abs=1e-12)
    assert b == pytest.approx(math.sqrt(10.0), abs=1e-12)


def test_critical_point(narrow: ModelParams):
    critical = critical_point(narrow)

    assert critical.c_tilde < critical.c0 < critical.b
    assert critical.c0 == pytest.approx(1.3624, abs=2e-3)
    assert critical.R0 == pytest.approx(0.3406, abs=2e-3)
    assert abs(critical.f_at_c0) <= 1e-12
    assert critical.c0 * narrow.theta_hl - narrow.q * critical.R0 <= 1e-10
    assert critical.x0_at_c0 == pytest.approx(critical.R0, abs=1e-9)
    assert critical.B0 == (critical.R0, critical.c0)


def test_critical_point_single_root_oracle(narrow: ModelParams):
    critical = critical_point(narrow)
    scan = np.linspace(critical.c_tilde, critical.b, 20001)
    values = [critical_equation(narrow, float(c)) for c in scan]
    assert count_sign_changes(values) == 1

    crossing = int(np.flatnonzero(np.diff(np.sign(values)) != 0)[0])
    assert scan[crossing] <= critical.c0 <= scan[crossing + 1]


def test_phi_endpoint(narrow: ModelParams):
    critical = critical_point(narrow)
    assert phi(narrow, critical.R0, critical) == critical.c0


@pytest.mark.parametrize("R", [0.0, -0.1, math.nan])
def test_phi_out_of_range(narrow: ModelParams, R: float):
    with pytest.raises(OutOfRange):
        phi(narrow, R)


def test_phi_beyond_critical_point(narrow: ModelParams):
    critical = critical_point(narrow)
    with pytest.raises(OutOfRange):
        phi(narrow, 1.01 * critical.R0, critical)


def test_phi_solves_compatibility(standard: ModelParams):
    critical = critical_point(standard)
    for fraction in [1e-3, 0.01, 0.1, 0.5, 0.9, 0.999]:
        R = fraction * critical.R0
        c = phi(standard, R, critical)
        scale = max(standard.q * math.exp(c * R), c * c * standard.theta_hl)
        assert abs(G(standard, R, c)) <= 1e-10 * scale
        assert c >= critical.c0
        assert flux_at_R(standard, R, c) >= 0


def test_sample_phi_shape(narrow: ModelParams):
    critical = critical_point(narrow)
    grid = default_phi_grid(critical)
    samples = sample_phi(narrow, grid, critical)

    assert samples.kind == CurveKind.PHI
    assert len(samples) == 256
    assert np.all(np.diff(samples.c) < 0)
    assert samples.max_residual <= 1e-10
    assert samples.R[-1] == critical.R0
    assert samples.c[-1] == critical.c0
    assert samples.points[-1] == (critical.R0, critical.c0)


def test_sample_phi_small_R_limit(narrow: ModelParams):
    samples = sample_phi(narrow)
    assert m_limit(narrow) == pytest.approx(math.log(1.25), rel=1e-15)
    assert extrapolate_m(samples) == pytest.approx(0.223144, abs=1e-3)


def test_sample_phi_rejects_unsorted_grid(narrow: ModelParams):
    critical = critical_point(narrow)
    with pytest.raises(OutOfRange):
        sample_phi(narrow, [0.2 * critical.R0, 0.1 * critical.R0], critical)


def test_safeguarded_newton():
    root, iterations = safeguarded_newton(lambda x: (math.cos(x) - x, -math.sin(x) - 1.0), 0.0, 1.0)
    assert root == pytest.approx(0.7390851332151607, abs=1e-14)
    assert 0 < iterations < 20

    root, _ = safeguarded_newton(lambda x: (x * x - 2.0, 2.0 * x), 2.0, 0.0, x0=1.9)
    assert root == pytest.approx(math.sqrt(2.0), abs=1e-14)

    with pytest.raises(BracketFailure):
        safeguarded_newton(lambda x: (x * x + 1.0, 2.0 * x), -1.0, 1.0)


def test_phi_passes_through_anchor(narrow: ModelParams):
    a, b, _ = critical_constants(narrow)
    critical = critical_point(narrow)
    assert a < critical.R0
    assert abs(phi(narrow, a, critical) - b) <= 1e-10


@pytest.mark.parametrize("k", [2, 3, 4])
def test_phi_small_R_asymptote(narrow: ModelParams, k: int):
    critical = critical_point(narrow)
    R = 10.0**-k * critical.R0
    assert phi(narrow, R, critical) >= m_limit(narrow) / (2.0 * R)


def test_phi_does_not_depend_on_h():
    low = validate_params(q=1.0, h=0.1, theta_ig=0.2, theta_hl=0.25)
    high = validate_params(q=1.0, h=0.5, theta_ig=0.2, theta_hl=0.25)
    assert low.theta_plus != high.theta_plus

    first, second = sample_phi(low), sample_phi(high)
    np.testing.assert_array_equal(first.R, second.R)
    np.testing.assert_array_equal(first.c, second.c)
    np.testing.assert_array_equal(first.residuals, second.residuals)
