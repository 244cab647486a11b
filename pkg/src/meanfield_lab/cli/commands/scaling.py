"""Scaling command: box potential, Lieb-Thirring and exchange scaling over Fermi balls."""

from __future__ import annotations

from pathlib import Path

import typer
from rich.table import Table

from meanfield_lab.cli.options import EXIT_FAILED, console, fail, load_config, section, status_text
from meanfield_lab.config.run_config import ScalingConfig
from meanfield_lab.core.config import configure_logging
from meanfield_lab.errors import LabError
from meanfield_lab.experiments.records import write_csv, write_json
from meanfield_lab.experiments.studies import SCALING_COLUMNS, ScalingStudy, scaling_study

app = typer.Typer()


def create_fit_table(study: ScalingStudy) -> Table:
    table = Table(title="Fitted exponents")
    table.add_column("Series", style="cyan")
    table.add_column("Exponent", justify="right")
    table.add_column("Prefactor", justify="right")
    for name, fit in study.fits.items():
        table.add_row(name, f"{fit.exponent:.4f}", f"{fit.prefactor:.4e}")
    return table


@app.callback(invoke_without_command=True)
def scaling(
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML configuration file."),
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Directory for all outputs."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="No console logging or summary."),
) -> None:
    """Closed-shell Fermi balls from N_min to N_max at constant density.

    Examples:

        mflab scaling

        mflab scaling --config runs/scaling.yml --out results/scaling
    """
    configure_logging(quiet)
    try:
        table = section(load_config(config, required=False).scaling, "scaling", ScalingConfig)
        study = scaling_study(table)
    except LabError as e:
        raise fail(e) from None

    write_csv(study.rows, out / f"{table.output}.csv", SCALING_COLUMNS)
    write_json(study.to_dict(), out / f"{table.output}.json")
    if not quiet:
        console.print(create_fit_table(study))
        result = study.result
        console.print(
            f"{result.checks} checks, worst margin {result.worst_margin:.3e} "
            f"({result.worst_check}): {status_text(result.passed)}"
        )
    if not study.result.passed:
        raise typer.Exit(EXIT_FAILED)
