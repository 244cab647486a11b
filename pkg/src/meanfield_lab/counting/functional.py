"""The counting functional alpha_f on the antisymmetric sector.

On antisymmetric states the projector onto "exactly k particles outside the
orbital span" is the eigenprojector of the outside-number operator
N_out = sum_{x,y} q_xy c+_x c_y at eigenvalue k. This module uses that fast
path; ``tensor_oracle`` builds the same projectors in first quantization.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.counting.weights import WeightFunction, weight_n
from meanfield_lab.errors import ValidationError
from meanfield_lab.fock.operators import HermitianOperator, lift_one_body
from meanfield_lab.fock.sector import SectorBasis
from meanfield_lab.fock.states import ManyBodyState
from meanfield_lab.meanfield.orbitals import OrbitalSet

# eigenvalues of N_out farther than this from an integer mean p is not a projector
SPECTRUM_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class ComplementProjector:
    """p onto span(phi_1..phi_N) and q = 1 - p, both M x M."""

    p: NDArray[np.complex128]
    q: NDArray[np.complex128]

    @classmethod
    def from_orbitals(cls, orbitals: OrbitalSet) -> "ComplementProjector":
        p = orbitals.projector()
        return cls(p=p, q=np.eye(orbitals.M) - p)

    @property
    def rank(self) -> int:
        return int(round(float(np.real(np.trace(self.p)))))

    def defects(self) -> dict[str, float]:
        """Deviations from p^2 = p, p = p^H and pq = 0."""
        return {
            "idempotent": float(np.max(np.abs(self.p @ self.p - self.p))),
            "hermitian": float(np.max(np.abs(self.p - self.p.conj().T))),
            "orthogonal": float(np.max(np.abs(self.p @ self.q))),
        }


def outside_number_operator(orbitals: OrbitalSet, sector: SectorBasis) -> HermitianOperator:
    """Second quantization of q: counts particles outside the orbital span."""
    if orbitals.M != sector.M:
        raise ValidationError(f"orbitals have M={orbitals.M}, sector has M={sector.M}")
    q = ComplementProjector.from_orbitals(orbitals).q
    # symmetrize away round-off so the Hermitian check sees an exact q
    return lift_one_body(0.5 * (q + q.conj().T), sector)


def excitation_distribution(state: ManyBodyState, orbitals: OrbitalSet) -> NDArray[np.float64]:
    """||Pi_k psi||^2 for k = 0..N, Pi_k the eigenprojector of N_out at k.

    Raises:
        ValidationError: If the spectrum of N_out is not integer (orbitals far
            from orthonormal).
    """
    if orbitals.N != state.N:
        raise ValidationError(f"orbitals have N={orbitals.N}, state has N={state.N}")
    n_out = outside_number_operator(orbitals, state.sector)
    eigenvalues, vectors = np.linalg.eigh(n_out.matrix)
    levels = np.rint(eigenvalues)
    if np.max(np.abs(eigenvalues - levels), initial=0.0) > SPECTRUM_TOL:
        raise ValidationError(
            "outside-number spectrum is not integer; orbitals are not orthonormal"
        )
    weights = np.abs(vectors.conj().T @ state.amplitudes) ** 2
    dist = np.zeros(state.N + 1)
    np.add.at(dist, np.clip(levels.astype(np.int64), 0, state.N), weights)
    return dist


def alpha_from_distribution(distribution: NDArray[np.float64], f: WeightFunction) -> float:
    """sum_k f(k) ||Pi_k psi||^2."""
    return float(np.dot(f.values, distribution))


def alpha_f(state: ManyBodyState, orbitals: OrbitalSet, f: WeightFunction) -> float:
    """alpha_f = <psi, f_hat psi>, in [0, 1] for normalized psi."""
    return alpha_from_distribution(excitation_distribution(state, orbitals), f)


def alpha_n(state: ManyBodyState, orbitals: OrbitalSet) -> float:
    return alpha_f(state, orbitals, weight_n(state.N))


def alpha_n_via_density(state: ManyBodyState, orbitals: OrbitalSet) -> float:
    """tr(mu_1 q), the density-matrix route to alpha_n."""
    from meanfield_lab.density.reduced import reduced_density

    mu = reduced_density(state).matrix
    q = ComplementProjector.from_orbitals(orbitals).q
    return float(np.real(np.trace(mu @ q)))
