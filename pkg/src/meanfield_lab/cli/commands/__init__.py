"""CLI commands for meanfield-lab."""

from meanfield_lab.cli.commands import run, scaling, semiclassical, sweep, verify

__all__ = ["run", "scaling", "semiclassical", "sweep", "verify"]
