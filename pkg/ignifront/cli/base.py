from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from enum import Enum
import logging
from pathlib import Path
from typing import Any, TypeVar

from dotenv import dotenv_values
import orjson
from pydantic.v1 import BaseModel, Extra, ValidationError, confloat, conint, root_validator
import typer

from ignifront.data import (
    FrontTolerances,
    ModelParams,
    SeparatrixOptions,
    SimulationConfig,
)
from ignifront.exceptions import ConfigError, NumericalError, ParameterError
from ignifront.model import validate_params
from ignifront.utils import OUTPUT_ENV

T = TypeVar("T")

_LOGGER = logging.getLogger(__name__)

EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

OPTION_CONFIG = typer.Option(
    ...,
    "--config",
    "-c",
    exists=True,
    dir_okay=False,
    readable=True,
    help="Flat key=value run configuration (`#` starts a comment)",
)
OPTION_OUTPUT = typer.Option(
    Path("."),
    "--output",
    "-o",
    file_okay=False,
    help="Output folder for the generated CSV and JSON files",
    envvar=OUTPUT_ENV,
)

Positive = confloat(gt=0, allow_inf_nan=False)
NonNegative = confloat(ge=0, allow_inf_nan=False)
Fraction = confloat(gt=0, le=1, allow_inf_nan=False)
Points = conint(ge=2)


class OutputFormatEnum(str, Enum):
    JSON = "json"
    PLAIN = "plain"


@dataclass
class CliContext:
    output_format: OutputFormatEnum
    verbose: bool = False


class RunConfig(BaseModel):
    """Validated contents of a run configuration file.

    Only the four model parameters are required.
    """

    q: float
    h: float
    theta_ig: float
    theta_hl: float

    phi_points: Points = 256  # type: ignore[valid-type]
    phi_r_min_factor: Fraction = 1e-3  # type: ignore[valid-type]
    psi_points: Points = 64  # type: ignore[valid-type]
    psi_r_max_factor: Positive = 3.0  # type: ignore[valid-type]

    portrait_c: NonNegative = 1.0  # type: ignore[valid-type]
    portrait_nu: Points = 41  # type: ignore[valid-type]
    portrait_nv: Points = 41  # type: ignore[valid-type]

    melnikov_c_min: NonNegative = 0.0  # type: ignore[valid-type]
    melnikov_c_max: Positive = 3.0  # type: ignore[valid-type]
    melnikov_points: Points = 10  # type: ignore[valid-type]

    profile_dx: Positive = 1e-3  # type: ignore[valid-type]

    pde_dx: Positive = 5e-3  # type: ignore[valid-type]
    pde_L: Positive = 12.0  # type: ignore[valid-type]
    pde_T: Positive = 8.0  # type: ignore[valid-type]
    pde_w: Positive = 0.5  # type: ignore[valid-type]
    pde_window: Fraction = 0.5  # type: ignore[valid-type]
    drift_T: NonNegative = 10.0  # type: ignore[valid-type]
    drift_L: Positive = 12.0  # type: ignore[valid-type]

    intersect_rel: Positive = 1e-10  # type: ignore[valid-type]
    psi_rel: Positive = 1e-10  # type: ignore[valid-type]
    rtol: Positive = 1e-10  # type: ignore[valid-type]
    atol: Positive = 1e-12  # type: ignore[valid-type]
    epsilon_seed_rel: Positive = 1e-7  # type: ignore[valid-type]

    class Config:
        extra = Extra.forbid
        allow_mutation = False

    @root_validator(skip_on_failure=True)
    def _check_melnikov_range(cls, values: dict[str, Any]) -> dict[str, Any]:
        if values["melnikov_c_min"] > values["melnikov_c_max"]:
            raise ValueError("melnikov_c_min must not exceed melnikov_c_max")
        return values

    def params(self) -> ModelParams:
        return validate_params(self.q, self.h, self.theta_ig, self.theta_hl)

    def separatrix_options(self) -> SeparatrixOptions:
        return SeparatrixOptions(rtol=self.rtol, atol=self.atol, epsilon_seed_rel=self.epsilon_seed_rel)

    def tolerances(self) -> FrontTolerances:
        return FrontTolerances(
            intersect_rel=self.intersect_rel,
            psi_rel=self.psi_rel,
            separatrix=self.separatrix_options(),
        )

    def simulation_config(self) -> SimulationConfig:
        return SimulationConfig(
            L=self.pde_L,
            dx=self.pde_dx,
            T=self.pde_T,
            w=self.pde_w,
            window=self.pde_window,
            snapshot_times=(self.pde_T,),
        )

    def drift_config(self) -> SimulationConfig:
        return SimulationConfig(L=self.drift_L, dx=self.pde_dx, T=self.drift_T)


def _first_error(err: ValidationError) -> str:
    error = err.errors()[0]
    location = ".".join(str(i) for i in error["loc"])
    return f"{location}: {error['msg']}"


def load_config(path: Path) -> RunConfig:
    """Parses a key=value file and validates it; raises `ConfigError` on bad content."""

    raw = dotenv_values(path, interpolate=False)
    missing = sorted(k for k, v in raw.items() if v is None)
    if missing:
        raise ConfigError(f"{path}: keys without a value: {', '.join(missing)}")
    try:
        config = RunConfig(**raw)
    except ValidationError as err:
        raise ConfigError(f"{path}: {_first_error(err)}") from err
    _LOGGER.debug("Loaded %s keys from %s", len(raw), path)
    return config


def output_folder(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    return path


def run(ctx: typer.Context, func: Callable[[], T]) -> T:
    """Runs a command body, mapping errors to exit codes.

    Validation errors exit with 1, numerical failures with 2.
    """

    try:
        return func()
    except (ParameterError, ValidationError) as err:
        typer.secho(str(err).splitlines()[0], fg="red", err=True)
        raise typer.Exit(EXIT_VALIDATION) from err
    except NumericalError as err:
        typer.secho(f"{type(err).__name__}: {err}", fg="red", err=True)
        raise typer.Exit(EXIT_NUMERICAL) from err


def json_output(obj: Any) -> None:
    typer.echo(orjson.dumps(obj, option=orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY).decode("utf-8"))


def print_summary(ctx: typer.Context, data: dict[str, Any]) -> None:
    """Prints `data` as JSON or as `key<TAB>value` lines."""

    if ctx.obj.output_format == OutputFormatEnum.JSON:
        json_output(data)
        return
    for key, value in data.items():
        typer.echo(f"{key}\t{value}")

