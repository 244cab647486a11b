"""Verify command: run every property suite and gate on the margins."""

from __future__ import annotations

from pathlib import Path

import typer
from rich.table import Table

from meanfield_lab.cli.options import (
    EXIT_FAILED,
    console,
    fail,
    load_config,
    resolve_seed,
    section,
    status_text,
)
from meanfield_lab.config.run_config import VerifyConfig
from meanfield_lab.core.config import configure_logging
from meanfield_lab.errors import LabError
from meanfield_lab.experiments.records import write_csv, write_json
from meanfield_lab.experiments.suites import SuiteReport, verify_all

app = typer.Typer()

SUMMARY_COLUMNS = ("suite", "passed", "checks", "worst_margin", "worst_check", "error")


def create_summary_table(report: SuiteReport) -> Table:
    """One row per suite with its worst margin."""
    table = Table(title=f"Verification (seed {report.seed}, sizes {report.sizes})")
    table.add_column("Suite", style="cyan", no_wrap=True)
    table.add_column("Status", style="bold")
    table.add_column("Checks", justify="right")
    table.add_column("Worst margin", justify="right")
    table.add_column("Worst check")
    for result in report.results:
        table.add_row(
            result.name,
            status_text(result.passed),
            str(result.checks),
            f"{result.worst_margin:.3e}",
            result.error or result.worst_check or "-",
        )
    return table


@app.callback(invoke_without_command=True)
def verify(
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML configuration file."),
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Directory for all outputs."),
    seed: int | None = typer.Option(None, "--seed", min=0, help="Seed for the random suites."),
    threads: int | None = typer.Option(  # noqa: ARG001
        None, "--threads", min=1, help="Accepted for symmetry; suites run in one thread."
    ),
    sizes: list[int] | None = typer.Option(
        None, "--size", "-n", help="Particle number to test (repeatable)."
    ),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="No console logging or summary."),
) -> None:
    """Run the counting, density, estimates and scaling3d suites.

    Examples:

        mflab verify --seed 7

        mflab verify --size 2 --size 3 --out results/verify
    """
    configure_logging(quiet)
    try:
        table = section(load_config(config, required=False).verify, "verify", VerifyConfig)
        report = verify_all(
            resolve_seed(seed, table.seed),
            table.sizes if sizes is None else sizes,
            samples=table.samples,
            suites=table.suites,
        )
    except LabError as e:
        raise fail(e) from None

    rows = [
        {
            "suite": r.name,
            "passed": r.passed,
            "checks": r.checks,
            "worst_margin": r.worst_margin,
            "worst_check": r.worst_check,
            "error": r.error,
        }
        for r in report.results
    ]
    write_csv(rows, out / "verify.csv", SUMMARY_COLUMNS)
    write_json(report.to_dict(), out / "verify.json")

    if not quiet:
        console.print(create_summary_table(report))
        console.print(f"Overall: {status_text(report.passed)}")
    if not report.passed:
        raise typer.Exit(EXIT_FAILED)
