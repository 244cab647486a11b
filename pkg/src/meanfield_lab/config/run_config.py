"""YAML run configuration.

A configuration file is a mapping with optional tables, one per subcommand:

    run:            # mflab run
    sweep:          # mflab sweep
    verify:         # mflab verify
    scaling:        # mflab scaling
    semiclassical:  # mflab semiclassical

Each table has defaults for every key, so ``run: {}`` is a valid run. Unknown
keys are rejected so that typos surface as errors naming the field.
"""

from pathlib import Path
from typing import Literal

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

import yaml
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from meanfield_lab.errors import ConfigError
from meanfield_lab.fock.sector import DEFAULT_SECTOR_CAP

InteractionKind = Literal[
    "zero", "constant", "contact", "nearest", "exponential", "inverse_distance", "random"
]
OrbitalRecipe = Literal["lowest", "plane_waves", "random"]
FieldKind = Literal["none", "ramp", "cosine"]


class _Table(BaseModel):
    model_config = ConfigDict(extra="forbid")


class InteractionConfig(_Table):
    """Pair interaction v(d) on the periodic lattice."""

    kind: InteractionKind = Field(default="exponential", description="Kernel family")
    strength: float = Field(default=1.0, description="Overall prefactor")
    length: float = Field(default=1.0, gt=0, description="Decay length for exponential")
    s: float = Field(default=1.0, gt=0, description="Exponent for inverse_distance")
    nonnegative: bool = Field(default=True, description="Random kernels drawn from [0, 1]")


class ModelConfig(_Table):
    """Lattice model parameters; the number of sites comes from the run's M rule."""

    hopping: float = Field(default=1.0, description="Prefactor of the discrete Laplacian")
    beta: float = Field(default=2.0 / 3.0, ge=0, description="Interaction scaling N^-beta")
    epsilon: float = Field(default=1.0, gt=0, description="Divides the whole generator")
    field: FieldKind = Field(default="ramp", description="External field profile")
    field_amplitude: float = Field(default=0.1, description="External field strength")
    interaction: InteractionConfig = Field(default_factory=InteractionConfig)


class _Sizes(_Table):
    N: list[int] = Field(default_factory=lambda: [2, 3, 4], description="Particle numbers")
    sites: int | None = Field(default=None, ge=1, description="Fixed M; overrides the M rule")
    sites_per_particle: int = Field(default=2, ge=1, description="M = sites_per_particle * N")
    sector_cap: int = Field(default=DEFAULT_SECTOR_CAP, ge=1)

    @model_validator(mode="after")
    def validate_sizes(self) -> Self:
        """Every N must be positive and fit on its lattice."""
        for n in self.N:
            if n < 1:
                raise ValueError(f"particle numbers must be positive, got {n}")
            if n > self.sites_for(n):
                raise ValueError(f"N={n} exceeds M={self.sites_for(n)}")
        return self

    def sites_for(self, N: int) -> int:
        """M for a given N."""
        return self.sites if self.sites is not None else self.sites_per_particle * N


class RunConfig(_Sizes):
    """A coupled or free-limit run for each N."""

    mode: Literal["coupled", "free_limit"] = "coupled"
    model: ModelConfig = Field(default_factory=ModelConfig)
    orbitals: OrbitalRecipe = "lowest"
    t_final: float = Field(default=1.0, ge=0)
    dt: float = Field(default=1e-3, gt=0)
    record_every: int = Field(default=50, ge=1, description="Integrator steps per sample")
    weight: Literal["n", "m"] = "n"
    gamma: float = Field(default=0.5, gt=0, le=1, description="Exponent of the m weight")
    exchange: bool = Field(default=False, description="Hartree-Fock instead of Hartree")
    three_terms: bool = Field(
        default=False, description="Record the derivative decomposition when the tensor fits"
    )
    seed: int = Field(default=0, ge=0)
    output: str = Field(default="run", description="File stem under the output directory")

    @model_validator(mode="after")
    def validate_output(self) -> Self:
        """Outputs stay under the output directory."""
        if not self.output or Path(self.output).name != self.output or self.output in {".", ".."}:
            raise ValueError(f"output must be a plain file stem, got {self.output!r}")
        return self

    @model_validator(mode="after")
    def validate_mode(self) -> Self:
        """Free-limit runs sit at beta = 1; the decomposition follows the Hartree flow."""
        if self.mode == "free_limit" and self.model.beta != 1.0:
            raise ValueError(f"free_limit runs need model.beta = 1, got {self.model.beta}")
        if self.three_terms and self.exchange:
            raise ValueError("three_terms is defined for the Hartree flow; unset exchange")
        return self


def acceptance_model() -> ModelConfig:
    """Translation-invariant ring with weak nearest-neighbour repulsion and slow hopping."""
    return ModelConfig(
        hopping=0.1,
        field="none",
        interaction=InteractionConfig(kind="nearest", strength=0.1),
    )


class SweepConfig(RunConfig):
    """A coupled run per N, gated on the envelope and on alpha_n(t_final) falling with N.

    The defaults are the acceptance sweep: the plane-wave Fermi sea on M = 2N
    sites, where no field breaks a degenerate shell.
    """

    N: list[int] = Field(default_factory=lambda: [2, 3, 4, 5, 6])
    model: ModelConfig = Field(default_factory=acceptance_model)
    orbitals: OrbitalRecipe = "plane_waves"
    output: str = "sweep"


class VerifyConfig(_Table):
    """Property suites run by ``mflab verify``."""

    seed: int = Field(default=7, ge=0)
    sizes: list[int] = Field(default_factory=lambda: [2, 3, 4], description="N values")
    samples: int = Field(
        default=125, ge=1, description="Random states per (N, M); 1000 over the default sizes"
    )
    suites: list[str] | None = Field(default=None, description="Subset of suite names")


class ScalingConfig(_Table):
    """Fermi-ball scaling checks in the periodic cube."""

    s_values: list[float] = Field(default_factory=lambda: [0.5, 1.0])
    N_min: int = Field(default=100, ge=1)
    N_max: int = Field(default=10_000, ge=1)
    density: float = Field(default=1.0, gt=0)
    exchange_N_max: int = Field(default=4000, ge=1)
    exponent_tolerance: float = Field(default=0.05, gt=0)
    exchange_tolerance: float = Field(default=0.1, gt=0)
    output: str = "scaling"

    @model_validator(mode="after")
    def validate_range(self) -> Self:
        """N_min must not exceed N_max and every s must be admissible."""
        if self.N_min > self.N_max:
            raise ValueError(f"N_min={self.N_min} exceeds N_max={self.N_max}")
        for s in self.s_values:
            if not 0.0 < s < 1.2:
                raise ValueError(f"s must lie in (0, 6/5), got {s}")
        return self


class SemiclassicalConfig(_Sizes):
    """Commutator trace-norm diagnostics under the semiclassical scaling."""

    N: list[int] = Field(default_factory=lambda: [2, 3, 4])
    model: ModelConfig = Field(default_factory=lambda: ModelConfig(beta=1.0))
    orbitals: OrbitalRecipe = "lowest"
    t_final: float = Field(default=0.5, ge=0)
    dt: float = Field(default=1e-3, gt=0)
    record_every: int = Field(default=50, ge=1)
    modes: list[int] = Field(default_factory=lambda: [1])
    exchange: bool = False
    coupled: bool = True
    seed: int = Field(default=0, ge=0)
    output: str = "semiclassical"


class LabConfig(_Table):
    """Top-level configuration document."""

    threads: int | None = Field(default=None, ge=1)
    run: RunConfig | None = None
    sweep: SweepConfig | None = None
    verify: VerifyConfig | None = None
    scaling: ScalingConfig | None = None
    semiclassical: SemiclassicalConfig | None = None


def _field_path(error: PydanticValidationError) -> tuple[str, str]:
    first = error.errors()[0]
    path = ".".join(str(part) for part in first["loc"]) or "<root>"
    return path, first["msg"]


def parse_lab_config(yaml_content: str) -> LabConfig:
    """Parse a configuration document.

    Returns:
        The parsed configuration; an empty document gives all tables unset.

    Raises:
        ConfigError: If the YAML is invalid, not a mapping, or fails validation.
    """
    try:
        data = yaml.safe_load(yaml_content)
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML: {e}") from e

    if data is None:
        return LabConfig()

    if not isinstance(data, dict):
        raise ConfigError("configuration must be a YAML mapping")

    try:
        return LabConfig.model_validate(data)
    except PydanticValidationError as e:
        path, message = _field_path(e)
        raise ConfigError(message, field=path) from e


def load_lab_config(path: Path | str) -> LabConfig:
    """Read and parse a configuration file.

    Raises:
        ConfigError: If the file is missing or unreadable, or its content is invalid.
    """
    config_path = Path(path)
    if not config_path.is_file():
        raise ConfigError(f"configuration file not found: {config_path}", field="config")
    try:
        content = config_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read {config_path}: {e}", field="config") from e
    return parse_lab_config(content)
