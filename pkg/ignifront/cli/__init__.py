from __future__ import annotations

import logging

import typer

from ignifront.cli.base import CliContext, OutputFormatEnum
from ignifront.cli.curves import phi, psi
from ignifront.cli.front import pde_check, solve
from ignifront.cli.phase import melnikov, portrait
from ignifront.utils import DEBUG_ENV, set_debug

_LOGGER = logging.getLogger("ignifront")

OPTION_OUT_FORMAT = typer.Option(
    OutputFormatEnum.PLAIN,
    "--output-format",
    help="Preferred format of the summary printed after each command.",
)
OPTION_VERBOSE = typer.Option(
    False,
    "--verbose",
    "-v",
    help="Log solver progress to the console",
)
OPTION_DEBUG = typer.Option(
    False,
    "--debug",
    help="Fully validate every data object and re-check curve invariants",
    envvar=DEBUG_ENV,
)

app = typer.Typer(rich_markup_mode="rich")
app.command(name="solve")(solve)
app.command(name="phi")(phi)
app.command(name="psi")(psi)
app.command(name="portrait")(portrait)
app.command(name="melnikov")(melnikov)
app.command(name="pde-check")(pde_check)


@app.callback()
def main(
    ctx: typer.Context,
    output_format: OutputFormatEnum = OPTION_OUT_FORMAT,
    verbose: bool = OPTION_VERBOSE,
    debug: bool = OPTION_DEBUG,
) -> None:
    """Free-interface autoignition front solver"""

    if debug:
        set_debug()
    if verbose:
        _setup_logger(level=logging.DEBUG if debug else logging.INFO, show_level=True)
    ctx.obj = CliContext(output_format=output_format, verbose=verbose)


def _setup_logger(level: int = logging.DEBUG, show_level: bool = False) -> None:
    console_handler = logging.StreamHandler()
    console_handler.setLevel(level)
    if show_level:
        formatter = logging.Formatter("%(levelname)s: %(message)s")
        console_handler.setFormatter(formatter)
    _LOGGER.setLevel(logging.DEBUG)
    _LOGGER.addHandler(console_handler)
