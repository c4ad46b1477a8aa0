from __future__ import annotations

from pydantic.v1 import ValidationError
import pytest

from ignifront.data import (
    CurveKind,
    FrontTolerances,
    IntegratorMethod,
    ModelParams,
    ReactionKind,
    SeparatrixOptions,
    SimulationConfig,
)
from ignifront.model import validate_params
from ignifront.utils import set_no_debug
from tests.conftest import STANDARD


def test_from_values_validates_in_debug():
    with pytest.raises(ValidationError):
        SeparatrixOptions.from_values(rtol=-1.0)


def test_from_values_skips_validation():
    set_no_debug()
    options = SeparatrixOptions.from_values(rtol=-1.0)
    assert options.rtol == -1.0


def test_models_are_frozen(standard: ModelParams):
    with pytest.raises(TypeError):
        standard.q = 2.0  # type: ignore[misc]


def test_params_hashable(standard: ModelParams):
    again = validate_params(**STANDARD)
    assert hash(again) == hash(standard)
    assert again == standard
    assert len({standard, again}) == 1


def test_params_summary(standard: ModelParams):
    summary = standard.summary_dict()
    assert summary["reaction"] == ReactionKind.QUARTIC.value
    assert summary["theta_plus"] == standard.theta_plus
    assert summary["domain"] == list(standard.domain)


def test_params_ordering_validator():
    with pytest.raises(ValidationError, match="theta_ig < theta_hl"):
        ModelParams(
            q=1.0,
            h=0.3,
            theta_ig=0.3,
            theta_hl=0.2,
            theta_plus=0.44,
            f_prime_plus=-3.6,
            domain=(0.0, 1.0),
        )


def test_separatrix_options():
    options = SeparatrixOptions()
    assert options.seed_offset(0.5) == pytest.approx(5e-8)
    assert options.with_seed(1e-6).seed_offset(0.5) == 1e-6

    tight = options.tightened(10)
    assert tight.rtol == pytest.approx(1e-11)
    assert tight.atol == pytest.approx(1e-13)
    assert tight.method == IntegratorMethod.AUTO
    assert options.rtol == 1e-10


def test_front_tolerances():
    tolerances = FrontTolerances()
    assert tolerances.psi_options.rtol == pytest.approx(1e-11)
    assert tolerances.tail_options.rtol == pytest.approx(1e-12)

    tight = tolerances.tightened(10)
    assert tight.intersect_rel == pytest.approx(1e-11)
    assert tight.phi_rel == pytest.approx(1e-13)
    assert tolerances.tightened(1e6).phi_rel == 1e-15


def test_simulation_config():
    config = SimulationConfig(dx=0.02)
    assert config.time_step == pytest.approx(0.4 * 0.02**2)
    assert config.n_cells == 1200
    grid = config.grid()
    assert len(grid) == 1201
    assert grid[0] == -12.0
    assert grid[-1] == 12.0

    with pytest.raises(ValidationError):
        SimulationConfig(window=1.5)


def test_enum_lookup():
    assert CurveKind("PHI") == CurveKind.PHI
    assert ReactionKind("Custom") == ReactionKind.CUSTOM
    assert IntegratorMethod.values() == ["auto", "DOP853", "Radau"]
