"""Application settings using pydantic-settings.

Only the RNG seed and the worker thread count can be overridden from the
environment (``MFLAB_SEED``, ``MFLAB_THREADS``); everything else lives in the
YAML run configuration.
"""

from functools import lru_cache

import logfire
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Process-level settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="MFLAB_",
        case_sensitive=False,
        extra="ignore",
    )

    seed: int | None = Field(
        default=None,
        ge=0,
        description="Seed override for every run; config values are used when unset.",
    )
    threads: int | None = Field(
        default=None,
        ge=1,
        description="Worker threads for independent runs; config values are used when unset.",
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def configure_logging(quiet: bool = False) -> None:
    """Configure logfire for the current command."""
    logfire.configure(
        service_name="meanfield-lab",
        send_to_logfire="if-token-present",
        console=False if quiet else None,
    )
