from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

import numpy as np
from rich.progress import track
import typer

from ignifront.cli import base
from ignifront.phase_plane import (
    finite_difference_dvdc,
    melnikov_dvdc,
    phase_portrait,
    separatrix,
)
from ignifront.utils import write_csv, write_json

OPTION_SPEED = typer.Option(
    None,
    "--speed",
    "-s",
    min=0.0,
    help="Front speed c of the portrait, defaults to `portrait_c` from the config",
)

MELNIKOV_HEADER = ("c", "v_hl", "dv_dc_melnikov", "dv_dc_fd", "rel_err")


def portrait(
    ctx: typer.Context,
    config: Path = base.OPTION_CONFIG,
    output: Path = base.OPTION_OUTPUT,
    speed: Optional[float] = OPTION_SPEED,
) -> None:
    """Writes the direction field of X_c, its separatrix and the triangle [p0, p1, p2]."""

    def callback() -> None:
        cfg = base.load_config(config)
        params = cfg.params()
        folder = base.output_folder(output)
        c = cfg.portrait_c if speed is None else speed

        field_rows: list[tuple[float, float, float, float]] = []
        triangle_rows: list[tuple[str, float, float]] = []
        separatrix_rows: list[tuple[float, float, float]] = []
        points: list[Any] = []
        try:
            result = phase_portrait(
                params,
                c,
                grid=(cfg.portrait_nu, cfg.portrait_nv),
                with_separatrix=False,
            )
            field_rows = result.field_rows()
            triangle_rows = result.triangle_rows()
            points = list(result.singular_points)
            trajectory = separatrix(params, c, cfg.separatrix_options())
            separatrix_rows = trajectory.rows()
        finally:
            write_csv(folder / "portrait.csv", ("u", "v", "du", "dv"), field_rows)
            write_csv(folder / "separatrix.csv", ("t", "u", "v"), separatrix_rows)
            write_csv(folder / "triangle.csv", ("side", "u", "v"), triangle_rows)
            write_json(folder / "singular_points.json", points)

        base.print_summary(
            ctx,
            {
                "c": c,
                "v_hl": trajectory.v_hl,
                "lambda_minus": trajectory.lambda_minus,
                "method": trajectory.method.value,
            },
        )

    base.run(ctx, callback)


def melnikov(
    ctx: typer.Context,
    config: Path = base.OPTION_CONFIG,
    output: Path = base.OPTION_OUTPUT,
) -> None:
    """Compares the Melnikov derivative of v_c(theta_hl) with finite differences.

    Rows certified before a failing speed are still written.
    """

    def callback() -> None:
        cfg = base.load_config(config)
        params = cfg.params()
        folder = base.output_folder(output)
        options = cfg.separatrix_options()

        rows: list[tuple[float, float, float, float, float]] = []
        speeds = np.linspace(cfg.melnikov_c_min, cfg.melnikov_c_max, cfg.melnikov_points)
        quiet = ctx.obj.output_format == base.OutputFormatEnum.JSON
        try:
            for c in track(speeds.tolist(), description="Melnikov integrals", disable=quiet):
                trajectory = separatrix(params, c, options)
                exact = melnikov_dvdc(params, c, trajectory=trajectory, options=options)
                approx = finite_difference_dvdc(params, c, options=options)
                rows.append((c, trajectory.v_hl, exact, approx, abs(exact - approx) / abs(approx)))
        finally:
            write_csv(folder / "melnikov.csv", MELNIKOV_HEADER, rows)

        base.print_summary(
            ctx,
            {
                "points": len(rows),
                "max_rel_err": max(r[4] for r in rows),
                "all_negative": all(r[2] < 0 for r in rows),
            },
        )

    base.run(ctx, callback)
