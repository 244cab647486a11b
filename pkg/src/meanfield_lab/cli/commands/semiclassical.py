"""Semiclassical command: commutator trace norms along the epsilon-scaled flow."""

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
    resolve_threads,
    section,
    status_text,
)
from meanfield_lab.config.run_config import SemiclassicalConfig
from meanfield_lab.core.config import configure_logging
from meanfield_lab.errors import LabError
from meanfield_lab.estimates.margins import MARGIN_TOL
from meanfield_lab.experiments.records import write_csv, write_json
from meanfield_lab.experiments.studies import semiclassical_study
from meanfield_lab.semiclassical.diagnostics import SemiclassicalDiagnostics

app = typer.Typer()


def _columns(runs: list[SemiclassicalDiagnostics]) -> list[str]:
    columns = ["N", "M", "epsilon", "t"]
    modes = sorted({k for run in runs for k in run.modes})
    columns += [f"phase_k{k}" for k in modes]
    columns += ["gradient", "alpha_n", "envelope"]
    return columns


def _envelope_holds(run: SemiclassicalDiagnostics) -> bool:
    margin = run.envelope_margin
    return margin is None or margin >= -MARGIN_TOL


def create_growth_table(runs: list[SemiclassicalDiagnostics]) -> Table:
    table = Table(title="Semiclassical growth rates (reported, not gated)")
    table.add_column("N", justify="right", style="cyan")
    table.add_column("epsilon", justify="right")
    table.add_column("Rates")
    table.add_column("Envelope", style="bold")
    for run in runs:
        rates = ", ".join(f"{name}: {rate:.3f}" for name, rate in run.growth_rates().items())
        envelope = "-" if run.envelope_margin is None else status_text(_envelope_holds(run))
        table.add_row(str(run.N), f"{run.epsilon:.3g}", rates, envelope)
    return table


@app.callback(invoke_without_command=True)
def semiclassical(
    config: Path | None = typer.Option(None, "--config", "-c", help="YAML configuration file."),
    out: Path = typer.Option(Path("results"), "--out", "-o", help="Directory for all outputs."),
    seed: int | None = typer.Option(None, "--seed", min=0, help="Seed override for every run."),
    threads: int | None = typer.Option(None, "--threads", min=1, help="Worker threads."),
    quiet: bool = typer.Option(False, "--quiet", "-q", help="No console logging or summary."),
) -> None:
    """Trace norms of [p, e^(ikx)] and [p, grad] with epsilon = 1/N.

    Examples:

        mflab semiclassical --out results/semiclassical
    """
    configure_logging(quiet)
    try:
        lab = load_config(config, required=False)
        table = section(lab.semiclassical, "semiclassical", SemiclassicalConfig)
        table = table.model_copy(update={"seed": resolve_seed(seed, table.seed)})
        runs = semiclassical_study(table, resolve_threads(threads, lab.threads))
    except LabError as e:
        raise fail(e) from None

    rows = [row for run in runs for row in run.to_rows()]
    write_csv(rows, out / f"{table.output}.csv", _columns(runs))
    write_json(
        [
            {
                "N": run.N,
                "M": run.M,
                "epsilon": run.epsilon,
                "growth_rates": run.growth_rates(),
                "envelope_margin": run.envelope_margin,
            }
            for run in runs
        ],
        out / f"{table.output}.json",
    )
    if not quiet:
        console.print(create_growth_table(runs))
    if not all(_envelope_holds(run) for run in runs):
        raise typer.Exit(EXIT_FAILED)
