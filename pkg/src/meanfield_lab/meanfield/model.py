"""Periodic 1D lattice model: hopping, external field, pair interaction."""

from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError, ValidationError

if TYPE_CHECKING:
    from meanfield_lab.config.run_config import InteractionConfig, ModelConfig

KERNEL_SYMMETRY_TOL = 1e-12


def periodic_distance(M: int) -> NDArray[np.int64]:
    """min(d, M - d) for every displacement d in 0..M-1."""
    d = np.arange(M)
    return np.minimum(d, M - d)


def periodic_convolution(
    kernel: NDArray[np.float64], values: NDArray[np.float64]
) -> NDArray[np.float64]:
    """(kernel * values)(x) = sum_y kernel[(x - y) mod M] values[y]."""
    return scipy.linalg.circulant(kernel) @ values


@dataclass(frozen=True)
class LatticeModel:
    """M periodic sites with h0 = hopping * (discrete Laplacian) + diag(w).

    ``v[d]`` is the pair interaction at periodic displacement ``d``; the N-body
    Hamiltonian carries it with prefactor N**-beta. ``epsilon`` divides the
    whole mean-field generator (1 outside the semiclassical regime).
    """

    M: int
    v: NDArray[np.float64]
    w: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    hopping: float = 1.0
    beta: float = 1.0
    epsilon: float = 1.0

    def __post_init__(self) -> None:
        if self.M < 1:
            raise DomainError(f"M must be positive, got {self.M}")
        v = np.asarray(self.v, dtype=np.float64)
        if v.shape != (self.M,):
            raise ValidationError(f"kernel must have length M={self.M}, got shape {v.shape}")
        mirrored = v[(-np.arange(self.M)) % self.M]
        if np.max(np.abs(v - mirrored)) > KERNEL_SYMMETRY_TOL * max(1.0, float(np.max(np.abs(v)))):
            raise ValidationError(
                "interaction kernel is not even: v(d) != v(M - d)",
                suggestion="symmetrize as (v + v[-d]) / 2",
            )
        w = np.zeros(self.M) if self.w.size == 0 else np.asarray(self.w, dtype=np.float64)
        if w.shape != (self.M,):
            raise ValidationError(f"field must have length M={self.M}, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValidationError("external field has non-finite entries")
        if self.epsilon <= 0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "w", w)

    def one_body_matrix(self) -> NDArray[np.complex128]:
        """h0 = hopping * (2 - S - S^T) + diag(w)."""
        shift = np.roll(np.eye(self.M), 1, axis=0)
        laplacian = 2.0 * np.eye(self.M) - shift - shift.T
        return (self.hopping * laplacian + np.diag(self.w)).astype(np.complex128)

    def interaction_matrix(self) -> NDArray[np.float64]:
        """V[x, y] = v[(x - y) mod M], unscaled."""
        return scipy.linalg.circulant(self.v)

    def scaled_kernel(self, N: int) -> NDArray[np.float64]:
        """v^(N) = N**-beta v."""
        return float(N) ** (-self.beta) * self.v

    @property
    def is_free(self) -> bool:
        return not np.any(self.v)

    def free(self) -> "LatticeModel":
        """Same geometry and field with the interaction switched off."""
        return replace(self, v=np.zeros(self.M))

    def with_kernel(self, v: NDArray[np.float64]) -> "LatticeModel":
        return replace(self, v=np.asarray(v, dtype=np.float64))

    @classmethod
    def from_config(
        cls, config: "ModelConfig", M: int, rng: np.random.Generator | None = None
    ) -> "LatticeModel":
        """Build an M-site model from the ``model`` table of a run configuration."""
        return cls(
            M=M,
            v=kernel_from_config(M, config.interaction, rng),
            w=field_profile(M, config.field, config.field_amplitude),
            hopping=config.hopping,
            beta=config.beta,
            epsilon=config.epsilon,
        )


# --- kernels -----------------------------------------------------------------


def zero_kernel(M: int) -> NDArray[np.float64]:
    return np.zeros(M)


def constant_kernel(M: int, strength: float) -> NDArray[np.float64]:
    return np.full(M, float(strength))


def contact_kernel(M: int, strength: float) -> NDArray[np.float64]:
    v = np.zeros(M)
    v[0] = strength
    return v


def nearest_neighbor_kernel(M: int, strength: float) -> NDArray[np.float64]:
    v = np.zeros(M)
    if M > 1:
        v[1] = strength
        v[M - 1] = strength
    return v


def exponential_kernel(M: int, strength: float, length: float = 1.0) -> NDArray[np.float64]:
    """strength * exp(-|d| / length) with periodic distance."""
    if length <= 0:
        raise DomainError(f"length must be positive, got {length}")
    return strength * np.exp(-periodic_distance(M) / length)


def inverse_distance_kernel(M: int, strength: float, s: float) -> NDArray[np.float64]:
    """strength * |d|^-s, with the on-site value set to ``strength``."""
    dist = periodic_distance(M).astype(np.float64)
    dist[0] = 1.0
    return strength * dist ** (-s)


def random_kernel(
    M: int, rng: np.random.Generator, strength: float = 1.0, nonnegative: bool = True
) -> NDArray[np.float64]:
    """Seeded random even kernel bounded by ``strength``."""
    raw = rng.uniform(0.0 if nonnegative else -1.0, 1.0, size=M)
    return strength * 0.5 * (raw + raw[(-np.arange(M)) % M])


def kernel_from_config(
    M: int, config: "InteractionConfig", rng: np.random.Generator | None = None
) -> NDArray[np.float64]:
    """Dispatch on ``interaction.kind``."""
    match config.kind:
        case "zero":
            return zero_kernel(M)
        case "constant":
            return constant_kernel(M, config.strength)
        case "contact":
            return contact_kernel(M, config.strength)
        case "nearest":
            return nearest_neighbor_kernel(M, config.strength)
        case "exponential":
            return exponential_kernel(M, config.strength, config.length)
        case "inverse_distance":
            return inverse_distance_kernel(M, config.strength, config.s)
        case "random":
            return random_kernel(
                M, rng or np.random.default_rng(0), config.strength, nonnegative=config.nonnegative
            )
    raise DomainError(f"unknown interaction kind {config.kind!r}")


# --- external fields ---------------------------------------------------------


def field_profile(M: int, kind: str, amplitude: float) -> NDArray[np.float64]:
    """External field w on the lattice.

    ``ramp`` (a * x / M) breaks both translation and reflection symmetry, so the
    lowest h0 eigenvectors are non-degenerate for small amplitudes.
    """
    x = np.arange(M, dtype=np.float64)
    match kind:
        case "none":
            return np.zeros(M)
        case "ramp":
            return amplitude * x / M
        case "cosine":
            return amplitude * np.cos(2.0 * np.pi * x / M)
    raise DomainError(f"unknown field profile {kind!r}")
