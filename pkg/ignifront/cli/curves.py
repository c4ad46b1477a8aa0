from __future__ import annotations

from pathlib import Path
from typing import Any

import typer

from ignifront.cli import base
from ignifront.exceptions import NumericalError
from ignifront.phi_curve import (
    critical_point,
    default_phi_grid,
    extrapolate_m,
    m_limit,
    sample_phi,
)
from ignifront.psi_curve import R_of_c, c_plus_bound, default_psi_grid, sample_psi
from ignifront.utils import write_csv, write_json

CURVE_HEADER = ("R", "c", "residual")
CRITICAL_KEYS = ("a", "b", "c_tilde", "c0", "R0", "x0_at_c0", "f_at_c0", "m_limit")


def phi(
    ctx: typer.Context,
    config: Path = base.OPTION_CONFIG,
    output: Path = base.OPTION_OUTPUT,
) -> None:
    """Tabulates the compatibility curve phi on (0, R0] and its critical point."""

    def callback() -> None:
        cfg = base.load_config(config)
        params = cfg.params()
        folder = base.output_folder(output)

        document: dict[str, Any] = {**dict.fromkeys(CRITICAL_KEYS), "error": None}
        rows: list[tuple[float, float, float]] = []
        try:
            critical = critical_point(params)
            document.update(critical.summary_dict())
            document["m_limit"] = m_limit(params)

            grid = default_phi_grid(critical, cfg.phi_points, cfg.phi_r_min_factor)
            samples = sample_phi(params, grid, critical)
            rows = list(samples.rows())
        except NumericalError as err:
            document["error"] = f"{type(err).__name__}: {err}"
            raise
        finally:
            write_json(folder / "critical.json", document)
            write_csv(folder / "phi.csv", CURVE_HEADER, rows)

        base.print_summary(
            ctx,
            {
                "c_tilde": critical.c_tilde,
                "b": critical.b,
                "R0": critical.R0,
                "c0": critical.c0,
                "m_extrapolated": extrapolate_m(samples),
                "max_residual": samples.max_residual,
            },
        )

    base.run(ctx, callback)


def psi(
    ctx: typer.Context,
    config: Path = base.OPTION_CONFIG,
    output: Path = base.OPTION_OUTPUT,
) -> None:
    """Tabulates the separatrix curve psi on [0, k R0]."""

    def callback() -> None:
        cfg = base.load_config(config)
        params = cfg.params()
        folder = base.output_folder(output)

        rows: list[tuple[float, float, float]] = []
        try:
            grid = default_psi_grid(params, cfg.psi_points, cfg.psi_r_max_factor)
            samples = sample_psi(params, grid, cfg.separatrix_options(), tol_rel=cfg.psi_rel)
            rows = list(samples.rows())
        finally:
            write_csv(folder / "psi.csv", CURVE_HEADER, rows)

        base.print_summary(
            ctx,
            {
                "psi_at_0": float(samples.c[0]),
                "c_plus_at_0": c_plus_bound(params, 0.0),
                "R_of_c_at_0": R_of_c(params, 0.0, cfg.separatrix_options()),
                "points": len(samples),
                "max_residual": samples.max_residual,
            },
        )

    base.run(ctx, callback)
