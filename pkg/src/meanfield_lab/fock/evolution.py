"""Exact Schrodinger evolution psi_t = exp(-iHt) psi_0."""

from collections.abc import Callable

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from meanfield_lab.errors import ValidationError
from meanfield_lab.fock.operators import HermitianOperator
from meanfield_lab.fock.states import ManyBodyState

# Sector dimension above which the Krylov path replaces the eigendecomposition.
DENSE_EXPM_MAX_DIM = 2000


class Propagator:
    """Spectral propagator for a fixed Hamiltonian.

    The eigendecomposition is computed once; every ``evolve`` call is then two
    matrix-vector products.
    """

    def __init__(self, H: HermitianOperator) -> None:
        self.H = H
        self.energies, self.vectors = np.linalg.eigh(H.matrix)

    def evolve(self, state: ManyBodyState, t: float) -> ManyBodyState:
        _check_same_space(state, self.H)
        coeffs = self.vectors.conj().T @ state.amplitudes
        psi = self.vectors @ (np.exp(-1j * self.energies * t) * coeffs)
        return ManyBodyState.from_vector(state.sector, psi)


def krylov_expmv(
    matvec: Callable[[NDArray[np.complex128]], NDArray[np.complex128]],
    v: NDArray[np.complex128],
    t: float,
    tol: float = 1e-12,
    m_max: int = 60,
) -> NDArray[np.complex128]:
    """exp(-i t A) v by Arnoldi projection onto a Krylov subspace.

    ``matvec`` applies the Hermitian generator A. The subspace grows until the
    update between successive sizes drops below ``tol``.
    """
    n = v.shape[0]
    beta = float(np.linalg.norm(v))
    if beta == 0.0:
        return np.zeros_like(v)

    m_max = min(m_max, n)
    V = np.zeros((n, m_max + 1), dtype=np.complex128)
    Hm = np.zeros((m_max + 1, m_max), dtype=np.complex128)
    V[:, 0] = v / beta
    u_prev = np.zeros_like(v)
    u = u_prev

    for m in range(1, m_max + 1):
        w = matvec(V[:, m - 1])
        for j in range(m):
            Hm[j, m - 1] = np.vdot(V[:, j], w)
            w = w - Hm[j, m - 1] * V[:, j]
        Hm[m, m - 1] = np.linalg.norm(w)

        e1 = np.zeros(m, dtype=np.complex128)
        e1[0] = 1.0
        u = beta * V[:, :m] @ (scipy.linalg.expm(-1j * t * Hm[:m, :m]) @ e1)

        # invariant subspace reached
        if abs(Hm[m, m - 1]) < 1e-14:
            break
        if np.linalg.norm(u - u_prev) < tol:
            break
        V[:, m] = w / Hm[m, m - 1]
        u_prev = u

    return u


def evolve_exact(
    state: ManyBodyState,
    H: HermitianOperator,
    t: float,
    dense_max_dim: int = DENSE_EXPM_MAX_DIM,
    max_krylov_step: float = 0.1,
) -> ManyBodyState:
    """Apply exp(-iHt) to a state.

    Sectors up to ``dense_max_dim`` use the eigendecomposition; larger ones use
    Krylov steps of at most ``max_krylov_step``.

    Raises:
        ValidationError: If H and the state live on different sectors.
    """
    _check_same_space(state, H)
    if t == 0.0:
        return state
    if H.dimension <= dense_max_dim:
        return Propagator(H).evolve(state, t)

    steps = max(1, int(np.ceil(abs(t) / max_krylov_step)))
    h = t / steps
    psi = state.amplitudes
    for _ in range(steps):
        psi = krylov_expmv(H.apply, psi, h)
    return ManyBodyState.from_vector(state.sector, psi)


def _check_same_space(state: ManyBodyState, H: HermitianOperator) -> None:
    if H.dimension != state.sector.dimension:
        raise ValidationError(
            f"Hamiltonian dimension {H.dimension} does not match state dimension "
            f"{state.sector.dimension}"
        )
    if H.sector is not None and not H.sector.same_space(state.sector):
        raise ValidationError("Hamiltonian and state live on different sectors")
