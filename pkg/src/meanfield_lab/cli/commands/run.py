"""Run command: coupled or free-limit runs for each N of the ``run`` table."""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import typer
from rich.table import Table

from meanfield_lab.cli.options import (
    EXIT_FAILED,
    console,
    fail,
    load_config,
    resolve_seed,
    resolve_threads,
    section,
    status_text,
)
from meanfield_lab.core.config import configure_logging
from meanfield_lab.errors import LabError
from meanfield_lab.estimates.margins import MarginReport
from meanfield_lab.experiments.records import RunRecord, write_records
from meanfield_lab.experiments.runs import run_all

app = typer.Typer()


def gate(record: RunRecord) -> MarginReport:
    """The envelope for coupled runs, the budget for free-limit runs."""
    return record.budget_report() if record.kind == "free_limit" else record.envelope_report()


def create_records_table(records: Sequence[RunRecord], title: str) -> Table:
    table = Table(title=title)
    table.add_column("N", justify="right", style="cyan")
    table.add_column("M", justify="right")
    table.add_column("dim", justify="right")
    table.add_column("alpha_n(end)", justify="right")
    table.add_column("alpha_m(end)", justify="right")
    table.add_column("bound margin", justify="right")
    table.add_column("Gram drift", justify="right")
    table.add_column("energy drift", justify="right")
    table.add_column("Status", style="bold")
    for record in records:
        report = gate(record)
        last = record.rows[-1]
        table.add_row(
            str(record.N),
            str(record.M),
            str(record.dimension),
            f"{last.alpha_n:.4e}",
            f"{last.alpha_m:.4e}",
            f"{report.worst_margin:.3e}",
            f"{record.gram_drift:.1e}",
            f"{record.energy_drift:.1e}",
            status_text(report.passed()),
        )
    return table


@app.callback(invoke_without_command=True)
def run(
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML configuration file."),
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Directory for all outputs."),
    seed: int | None = typer.Option(None, "--seed", min=0, help="Seed override for every run."),
    threads: int | None = typer.Option(None, "--threads", min=1, help="Worker threads."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="No console logging or summary."),
) -> None:
    """Evolve exact and mean-field dynamics for every N of the ``run`` table.

    Writes <output>.csv (one row per N and sample time) and <output>.json.

    Examples:

        mflab run --config runs/coupled.yml --out results
    """
    configure_logging(quiet)
    try:
        lab = load_config(config, required=True)
        table = section(lab.run, "run")
        table = table.model_copy(update={"seed": resolve_seed(seed, table.seed)})
        records = run_all(table, resolve_threads(threads, lab.threads))
    except LabError as e:
        raise fail(e) from None

    write_records(records, out, table.output)
    if not quiet:
        console.print(create_records_table(records, f"{table.mode} runs"))
    if not all(gate(record).passed() for record in records):
        raise typer.Exit(EXIT_FAILED)
