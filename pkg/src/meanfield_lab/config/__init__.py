"""YAML run configuration for meanfield-lab."""

from meanfield_lab.config.run_config import (
    InteractionConfig,
    LabConfig,
    ModelConfig,
    RunConfig,
    ScalingConfig,
    SemiclassicalConfig,
    SweepConfig,
    VerifyConfig,
    load_lab_config,
    parse_lab_config,
)

__all__ = [
    "InteractionConfig",
    "LabConfig",
    "ModelConfig",
    "RunConfig",
    "ScalingConfig",
    "SemiclassicalConfig",
    "SweepConfig",
    "VerifyConfig",
    "load_lab_config",
    "parse_lab_config",
]
