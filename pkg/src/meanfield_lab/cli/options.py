"""Shared flags, precedence rules and error reporting for the CLI commands.

Precedence for seed and thread count: CLI flag > environment (MFLAB_SEED,
MFLAB_THREADS) > configuration file > default.
"""

from __future__ import annotations

from collections.abc import Callable
from pathlib import Path
from typing import TypeVar

import typer
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError
from rich.console import Console

from meanfield_lab.config.run_config import LabConfig, load_lab_config
from meanfield_lab.core.config import Settings, get_settings
from meanfield_lab.errors import ConfigError, LabError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2

console = Console()

T = TypeVar("T", bound=BaseModel)


def _settings() -> Settings:
    try:
        return get_settings()
    except PydanticValidationError as e:
        first = e.errors()[0]
        name = "MFLAB_" + ".".join(str(p) for p in first["loc"]).upper()
        raise ConfigError(first["msg"], field=name) from e


def resolve_seed(flag: int | None, config_seed: int) -> int:
    if flag is not None:
        return flag
    env = _settings().seed
    return env if env is not None else config_seed


def resolve_threads(flag: int | None, config_threads: int | None) -> int:
    if flag is not None:
        return flag
    env = _settings().threads
    if env is not None:
        return env
    return config_threads or 1


def load_config(path: Path | None, required: bool) -> LabConfig:
    """Load the configuration file, or an empty one when none is given and none is needed.

    Raises:
        ConfigError: If the file is required but not given, missing or invalid.
    """
    if path is None:
        if required:
            raise ConfigError("a configuration file is required", field="--config")
        return LabConfig()
    return load_lab_config(path)


def section(table: T | None, name: str, default: Callable[[], T] | None = None) -> T:
    """A configuration table, or ``default()`` when it is absent.

    Raises:
        ConfigError: If the table is absent and there is no default.
    """
    if table is not None:
        return table
    if default is None:
        raise ConfigError("missing table in configuration", field=name)
    return default()


def fail(error: LabError) -> typer.Exit:
    """Print a lab error and map it to an exit code (2 for configuration, 1 otherwise)."""
    if isinstance(error, ConfigError):
        console.print(f"[red]Configuration error:[/red] {error}")
        return typer.Exit(EXIT_CONFIG)
    console.print(f"[red]Error:[/red] {error}")
    return typer.Exit(EXIT_FAILED)


def status_text(passed: bool) -> str:
    return "[green]pass[/green]" if passed else "[red]FAIL[/red]"
