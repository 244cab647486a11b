"""Sweep command: coupled runs over N, gated on the envelope and on monotonicity in N."""

from __future__ import annotations

from pathlib import Path

import typer

from meanfield_lab.cli.commands.run import create_records_table
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
from meanfield_lab.experiments.records import write_json, write_records
from meanfield_lab.experiments.runs import sweep as run_sweep

app = typer.Typer()


@app.callback(invoke_without_command=True)
def sweep(
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML configuration file."),
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Directory for all outputs."),
    seed: int | None = typer.Option(None, "--seed", min=0, help="Seed override for every run."),
    threads: int | None = typer.Option(None, "--threads", min=1, help="Worker threads."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="No console logging or summary."),
) -> None:
    """Coupled runs for every N of the ``sweep`` table.

    Writes <output>.csv with one row per (N, t), <output>.json with the records
    and <output>_summary.json with both gates. Exits 1 when the envelope fails or
    alpha_n(t_final) increases with N.

    Examples:

        mflab sweep --config runs/accept.yml --threads 4
    """
    configure_logging(quiet)
    try:
        lab = load_config(config, required=True)
        table = section(lab.sweep, "sweep")
        table = table.model_copy(update={"seed": resolve_seed(seed, table.seed)})
        result = run_sweep(table, resolve_threads(threads, lab.threads))
    except LabError as e:
        raise fail(e) from None

    write_records(result.records, out, table.output)
    write_json(result.to_dict(), out / f"{table.output}_summary.json")
    envelope = result.envelope_report()
    if not quiet:
        console.print(create_records_table(result.records, "sweep"))
        console.print(f"alpha_n(t_final) non-increasing in N: {status_text(result.monotone)}")
        console.print(f"Envelope domination: {status_text(envelope.passed())}")
    if not result.passed:
        raise typer.Exit(EXIT_FAILED)
