"""Reduced one-particle density matrices and their norm distances."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from meanfield_lab.errors import ValidationError
from meanfield_lab.fock.operators import check_hermitian, one_body_correlations
from meanfield_lab.fock.states import ManyBodyState
from meanfield_lab.fock.tensor import TensorState
from meanfield_lab.meanfield.orbitals import OrbitalSet

# construction tolerance; orbitals from the integrator carry ~1e-9 Gram drift
DENSITY_TOL = 1e-8
NORM_ORDER_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """Trace-one Hermitian M x M matrix mu_1 of an N-particle state."""

    matrix: NDArray[np.complex128]
    N: int

    def __post_init__(self) -> None:
        check_hermitian(self.matrix, "density matrix")
        trace = float(np.real(np.trace(self.matrix)))
        if abs(trace - 1.0) > DENSITY_TOL:
            raise ValidationError(f"density matrix has trace {trace:.12f}, expected 1")
        if self.min_eigenvalue < -DENSITY_TOL:
            raise ValidationError(
                f"density matrix is not positive (smallest eigenvalue {self.min_eigenvalue:.2e})"
            )

    @property
    def M(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def eigenvalues(self) -> NDArray[np.float64]:
        return np.linalg.eigvalsh(self.matrix)

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def operator_norm(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    def pauli_excess(self) -> float:
        """||mu||_op - 1/N; non-positive for fermionic states."""
        return self.operator_norm - 1.0 / self.N


def reduced_density(state: ManyBodyState) -> ReducedDensityMatrix:
    """(mu_1)_xy = <psi| c+_y c_x |psi> / N."""
    G = one_body_correlations(state)
    return ReducedDensityMatrix(G.T / state.N, state.N)


def slater_density(orbitals: OrbitalSet) -> ReducedDensityMatrix:
    """mu_1 of the antisymmetrized product: p / N."""
    p = orbitals.projector()
    return ReducedDensityMatrix(0.5 * (p + p.conj().T) / orbitals.N, orbitals.N)


def tensor_partial_trace(tensor: TensorState) -> ReducedDensityMatrix:
    """Trace out slots 2..N of |T><T|."""
    A = tensor.amplitudes.reshape(tensor.M, -1)
    mu = A @ A.conj().T
    return ReducedDensityMatrix(0.5 * (mu + mu.conj().T), tensor.N)


@dataclass(frozen=True)
class NormDistances:
    """Trace, Hilbert-Schmidt and operator norm of a difference."""

    trace: float
    hs: float
    op: float

    def to_dict(self) -> dict[str, float]:
        return {"trace": self.trace, "hs": self.hs, "op": self.op}


def norm_distances_of(difference: NDArray[np.complex128]) -> NormDistances:
    """Norms from the singular values of a matrix.

    Raises:
        ValidationError: If op <= HS <= trace fails (corrupt input).
    """
    sigma = scipy.linalg.svdvals(difference)
    trace = float(np.sum(sigma))
    hs = float(np.sqrt(np.sum(sigma**2)))
    op = float(np.max(sigma, initial=0.0))
    if not (op <= hs + NORM_ORDER_TOL and hs <= trace + NORM_ORDER_TOL):
        raise ValidationError(f"norm ordering violated: op={op}, hs={hs}, trace={trace}")
    return NormDistances(trace=trace, hs=hs, op=op)


def norm_distances(a: ReducedDensityMatrix, b: ReducedDensityMatrix) -> NormDistances:
    """||a - b|| in trace, Hilbert-Schmidt and operator norm."""
    if a.M != b.M:
        raise ValidationError(f"density matrices have different sizes {a.M} and {b.M}")
    return norm_distances_of(a.matrix - b.matrix)
