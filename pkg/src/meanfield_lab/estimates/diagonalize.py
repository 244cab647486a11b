"""Diagonalization of p h(x1 - .) p and the sandwich inequalities built on it."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.counting.tensor_oracle import p_slot, q_slot
from meanfield_lab.errors import DomainError, ValidationError
from meanfield_lab.estimates.margins import MarginReport
from meanfield_lab.fock.tensor import TensorState, pair_multiplication
from meanfield_lab.meanfield.model import periodic_convolution
from meanfield_lab.meanfield.orbitals import OrbitalSet


@dataclass(frozen=True)
class PairDiagonalization:
    """Eigen-decomposition of p h(x1 - .) p restricted to the orbital span."""

    x1: int
    eigenvalues: NDArray[np.float64]
    vectors: NDArray[np.complex128]

    def reconstruct(self) -> NDArray[np.complex128]:
        """sum_i lambda_i |chi_i><chi_i| as an M x M matrix."""
        return (self.vectors * self.eigenvalues) @ self.vectors.conj().T


def split_kernel(v: NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """v = v_plus - v_minus with both parts non-negative."""
    return np.maximum(v, 0.0), np.maximum(-v, 0.0)


def _require_nonnegative(h: NDArray[np.float64]) -> None:
    if np.any(h < 0):
        raise DomainError(
            "kernel has negative entries",
            suggestion="split it with split_kernel and treat both parts separately",
        )


def diagonalize_pvp(orbitals: OrbitalSet, h: NDArray[np.float64], x1: int) -> PairDiagonalization:
    """Diagonalize A_ij = sum_y conj(phi_i(y)) h(x1 - y) phi_j(y).

    The eigenvalues sum to (h * rho)(x1); chi = Phi U spans the same space as
    the orbitals.

    Raises:
        DomainError: If h has negative entries or x1 is off the lattice.
    """
    M = orbitals.M
    if h.shape != (M,):
        raise ValidationError(f"kernel must have length M={M}, got shape {h.shape}")
    _require_nonnegative(h)
    if not 0 <= x1 < M:
        raise DomainError(f"site {x1} out of range for M={M}")
    column = h[(x1 - np.arange(M)) % M]
    phi = orbitals.coefficients
    A = phi.conj().T @ (column[:, None] * phi)
    eigenvalues, U = np.linalg.eigh(0.5 * (A + A.conj().T))
    return PairDiagonalization(x1=x1, eigenvalues=eigenvalues, vectors=phi @ U)


def sandwich_inequalities(
    state: TensorState, orbitals: OrbitalSet, h: NDArray[np.float64]
) -> MarginReport:
    """Scalar-product bounds for h >= 0 on an antisymmetric tensor.

      <p2 h12 p2>                   <= sup(h * rho) / (N - 1)
      <p1 p2 h12 p1 p2>             <= sum (h * rho) rho / (N (N - 1))
      Re <q3 p1 p2 h12 h13 p1 p3 q2> <= sup(h * rho)^2 / ((N - 1)(N - 2)) <q1>

    The last line needs N >= 3 and is omitted otherwise.
    """
    N, M = state.N, state.M
    if N < 2:
        raise DomainError("sandwich inequalities need N >= 2")
    if h.shape != (M,):
        raise ValidationError(f"kernel must have length M={M}, got shape {h.shape}")
    _require_nonnegative(h)
    rho = orbitals.density()
    h_rho = periodic_convolution(h, rho)
    sup_h_rho = float(np.max(h_rho))
    p1, p2 = p_slot(orbitals, 0, N), p_slot(orbitals, 1, N)
    h12 = pair_multiplication(h, 0, 1, N)

    report = MarginReport("sandwich")
    report.add(
        "<p2 h12 p2> <= sup(h*rho)/(N-1)",
        (p2 @ h12 @ p2).expectation(state).real,
        sup_h_rho / (N - 1),
    )
    report.add(
        "<p1p2 h12 p1p2> <= int(h*rho)rho/(N(N-1))",
        (p1 @ p2 @ h12 @ p1 @ p2).expectation(state).real,
        float(h_rho @ rho) / (N * (N - 1)),
    )
    if N >= 3:
        p3 = p_slot(orbitals, 2, N)
        q1, q2, q3 = q_slot(orbitals, 0, N), q_slot(orbitals, 1, N), q_slot(orbitals, 2, N)
        h13 = pair_multiplication(h, 0, 2, N)
        lhs = (q3 @ p1 @ p2 @ h12 @ h13 @ p1 @ p3 @ q2).expectation(state).real
        report.add(
            "<q3p1p2 h12h13 p1p3q2> <= sup(h*rho)^2 <q1>/((N-1)(N-2))",
            lhs,
            sup_h_rho**2 / ((N - 1) * (N - 2)) * q1.expectation(state).real,
        )
    return report
