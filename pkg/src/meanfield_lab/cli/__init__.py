"""meanfield-lab CLI: suites, runs, sweeps and studies."""

from __future__ import annotations

import click
import typer
from rich.console import Console

from meanfield_lab import __version__
from meanfield_lab.cli.commands import run, scaling, semiclassical, sweep, verify
from meanfield_lab.cli.options import EXIT_CONFIG, EXIT_OK

app = typer.Typer(
    name="mflab",
    help="Exact N-body against fermionic mean-field dynamics on a lattice",
    no_args_is_help=True,
)
console = Console()

app.add_typer(verify.app, name="verify", help="Run the property suites")
app.add_typer(run.app, name="run", help="Coupled or free-limit runs")
app.add_typer(sweep.app, name="sweep", help="Coupled runs over N with the envelope gate")
app.add_typer(scaling.app, name="scaling", help="Fermi-ball scaling checks")
app.add_typer(semiclassical.app, name="semiclassical", help="Semiclassical diagnostics")


@app.command()
def version() -> None:
    """Show the CLI version."""
    console.print(f"mflab version {__version__}")


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns 0 on success, 1 on a failed gate, 2 on configuration errors."""
    command = typer.main.get_command(app)
    try:
        result = command.main(args=argv, prog_name="mflab", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_CONFIG
    except click.Abort:
        return 1
    return result if isinstance(result, int) else EXIT_OK


__all__ = ["app", "main"]
