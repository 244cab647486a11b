"""Core settings for meanfield-lab."""

from meanfield_lab.core.config import Settings, configure_logging, get_settings

__all__ = ["Settings", "configure_logging", "get_settings"]
