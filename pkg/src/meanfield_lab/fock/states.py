"""Many-body states on a sector and Slater determinants."""

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import ValidationError
from meanfield_lab.fock.sector import SectorBasis

if TYPE_CHECKING:
    from meanfield_lab.meanfield.orbitals import OrbitalSet

NORM_TOL = 1e-10


@dataclass(frozen=True)
class ManyBodyState:
    """Normalized amplitude vector over a sector."""

    sector: SectorBasis
    amplitudes: NDArray[np.complex128]

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (self.sector.dimension,):
            raise ValidationError(
                f"amplitudes have shape {self.amplitudes.shape}, "
                f"sector dimension is {self.sector.dimension}"
            )
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalized (norm {norm:.12f})")

    @property
    def N(self) -> int:
        return self.sector.N

    @property
    def M(self) -> int:
        return self.sector.M

    def overlap(self, other: "ManyBodyState") -> complex:
        """<self|other>."""
        if not self.sector.same_space(other.sector):
            raise ValidationError("states live on different sectors")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    @classmethod
    def from_vector(cls, sector: SectorBasis, vector: NDArray[np.complex128]) -> "ManyBodyState":
        """Normalize an arbitrary non-zero vector into a state."""
        vector = np.asarray(vector, dtype=np.complex128)
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            raise ValidationError("cannot normalize the zero vector")
        return cls(sector, vector / norm)


def basis_state(sector: SectorBasis, bitstring: int) -> ManyBodyState:
    """The occupation basis state for a bitstring."""
    amplitudes = np.zeros(sector.dimension, dtype=np.complex128)
    amplitudes[sector.position(bitstring)] = 1.0
    return ManyBodyState(sector, amplitudes)


def random_state(sector: SectorBasis, rng: np.random.Generator) -> ManyBodyState:
    """Haar-like random state from complex Gaussian amplitudes."""
    z = rng.standard_normal(sector.dimension) + 1j * rng.standard_normal(sector.dimension)
    return ManyBodyState.from_vector(sector, z)


def slater_state(orbitals: "OrbitalSet", sector: SectorBasis) -> ManyBodyState:
    """Antisymmetrized product of the orbitals.

    The amplitude of the bitstring with occupied modes ``i_1 < ... < i_N`` is the
    determinant of the N x N block of the coefficient matrix on those rows.

    Raises:
        ValidationError: If the orbitals do not fit the sector or are not orthonormal.
    """
    if orbitals.M != sector.M or orbitals.N != sector.N:
        raise ValidationError(
            f"orbitals are {orbitals.M}x{orbitals.N}, sector is M={sector.M}, N={sector.N}"
        )
    orbitals.validate()

    blocks = orbitals.coefficients[sector.occupied_modes()]
    amplitudes = np.linalg.det(blocks).astype(np.complex128)
    # Cauchy-Binet gives norm^2 = det(gram); remove the integrator's residual drift
    return ManyBodyState.from_vector(sector, amplitudes)
