from __future__ import annotations

from pathlib import Path
from typing import Any

import typer

from ignifront.cli import base
from ignifront.exceptions import NumericalError
from ignifront.front_solver import (
    default_front_grid,
    eval_front,
    front_summary,
    profile_mismatch,
    solve_front,
    verify_front,
)
from ignifront.pde_verifier import (
    comoving_drift,
    convergence_study,
    measure_speed,
    simulate_lab_frame,
)
from ignifront.utils import run_async, write_csv, write_json

OPTION_CONVERGENCE = typer.Option(
    False,
    "--convergence",
    help="Also measure the speed at dx/2 and dx/4 and report observed orders",
)

FRONT_KEYS = (
    "R_star",
    "c_star",
    "phi_at_R_star",
    "psi_at_R_star",
    "flux_at_R_star",
    "R0",
    "c0",
    "bracket",
    "v_hl",
    "lambda_minus",
    "lambda_plus",
    "epsilon_seed",
    "certificates",
    "verification",
)
REPORT_KEYS = (
    "c_star",
    "R_star",
    "c_measured",
    "rel_error",
    "lab_steps",
    "lab_offset",
    "theta_min",
    "theta_max",
    "profile_mismatch",
    "profile_mismatch_bound",
    "drift",
    "convergence",
)


def _params_document(cfg: base.RunConfig) -> dict[str, Any]:
    return {"q": cfg.q, "h": cfg.h, "theta_ig": cfg.theta_ig, "theta_hl": cfg.theta_hl}


def solve(
    ctx: typer.Context,
    config: Path = base.OPTION_CONFIG,
    output: Path = base.OPTION_OUTPUT,
) -> None:
    """Solves for (R*, c*), writes front.json and the profile theta*(x)."""

    def callback() -> None:
        cfg = base.load_config(config)
        params = cfg.params()
        folder = base.output_folder(output)

        document: dict[str, Any] = {**_params_document(cfg), **dict.fromkeys(FRONT_KEYS), "error": None}
        profile_rows: list[tuple[float, float, float]] = []
        try:
            solution = solve_front(params, cfg.tolerances())
            grid = default_front_grid(solution, cfg.profile_dx)
            report = verify_front(solution, grid)
            document.update(front_summary(solution, report))
            theta, theta_x = eval_front(solution, grid)
            profile_rows = list(zip(grid.tolist(), theta.tolist(), theta_x.tolist()))  # type: ignore[union-attr]
        except NumericalError as err:
            document["error"] = f"{type(err).__name__}: {err}"
            raise
        finally:
            write_json(folder / "front.json", document)
            write_csv(folder / "profile.csv", ("x", "theta", "theta_x"), profile_rows)

        certificates = solution.certificates
        base.print_summary(
            ctx,
            {
                "R_star": solution.R_star,
                "c_star": solution.c_star,
                "flux_at_R_star": certificates.flux_at_R,
                "max_jump": certificates.max_jump,
                "ode_residual_max": report.ode_residual_max,
                "strictly_increasing": report.strictly_increasing,
            },
        )

    base.run(ctx, callback)


def pde_check(
    ctx: typer.Context,
    config: Path = base.OPTION_CONFIG,
    output: Path = base.OPTION_OUTPUT,
    convergence: bool = OPTION_CONVERGENCE,
) -> None:
    """Cross-checks the solved front against finite-difference simulations."""

    def callback() -> None:
        cfg = base.load_config(config)
        params = cfg.params()
        sim_config = cfg.simulation_config()
        drift_config = cfg.drift_config()
        folder = base.output_folder(output)

        report: dict[str, Any] = {**_params_document(cfg), **dict.fromkeys(REPORT_KEYS), "error": None}
        series_rows: list[tuple[float, float]] = []
        snapshot_rows: list[tuple[float, float]] = []
        try:
            solution = solve_front(params, cfg.tolerances())
            report["c_star"] = solution.c_star
            report["R_star"] = solution.R_star

            result = simulate_lab_frame(params, sim_config)
            series_rows = result.series.rows()
            snapshot_rows = result.final.rows()
            c_measured = measure_speed(result.series, sim_config.window)
            drift = comoving_drift(params, solution, drift_config)
            report.update(
                {
                    "c_measured": c_measured,
                    "rel_error": abs(c_measured - solution.c_star) / solution.c_star,
                    "lab_steps": result.steps,
                    "lab_offset": result.offset,
                    "theta_min": result.theta_min,
                    "theta_max": result.theta_max,
                    "profile_mismatch": profile_mismatch(solution, result.x, result.theta),
                    "profile_mismatch_bound": 5 * sim_config.dx * drift.max_theta_x,
                    "drift": drift.summary_dict(),
                },
            )
            if convergence:
                dxs = [sim_config.dx, sim_config.dx / 2, sim_config.dx / 4]
                levels = run_async(convergence_study(params, solution, dxs, sim_config))
                report["convergence"] = [level.summary_dict() for level in levels]
        except NumericalError as err:
            report["error"] = f"{type(err).__name__}: {err}"
            raise
        finally:
            write_json(folder / "report.json", report)
            write_csv(folder / "series.csv", ("t", "x_ig"), series_rows)
            write_csv(folder / "snapshot.csv", ("x", "theta"), snapshot_rows)

        base.print_summary(
            ctx,
            {
                "c_star": report["c_star"],
                "c_measured": report["c_measured"],
                "rel_error": report["rel_error"],
                "drift": report["drift"]["drift"],
            },
        )

    base.run(ctx, callback)
