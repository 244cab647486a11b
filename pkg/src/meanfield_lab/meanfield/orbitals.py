"""Orthonormal orbital sets and the recipes that produce initial data."""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError, ValidationError
from meanfield_lab.meanfield.model import LatticeModel

GRAM_TOL = 1e-8


@dataclass(frozen=True)
class OrbitalSet:
    """N orbitals as the columns of an M x N coefficient matrix, at time ``t``.

    Orthonormality is tracked, not re-imposed; call ``validate`` where it is a
    precondition.
    """

    coefficients: NDArray[np.complex128]
    t: float = 0.0

    def __post_init__(self) -> None:
        c = np.asarray(self.coefficients, dtype=np.complex128)
        if c.ndim != 2 or c.shape[1] < 1 or c.shape[1] > c.shape[0]:
            raise ValidationError(f"coefficients must be M x N with 1 <= N <= M, got {c.shape}")
        object.__setattr__(self, "coefficients", c)

    @property
    def M(self) -> int:
        return int(self.coefficients.shape[0])

    @property
    def N(self) -> int:
        return int(self.coefficients.shape[1])

    def density(self) -> NDArray[np.float64]:
        """rho(x) = sum_j |phi_j(x)|^2."""
        return np.sum(np.abs(self.coefficients) ** 2, axis=1)

    def projector(self) -> NDArray[np.complex128]:
        """p = sum_j |phi_j><phi_j|."""
        return self.coefficients @ self.coefficients.conj().T

    def gram(self) -> NDArray[np.complex128]:
        return self.coefficients.conj().T @ self.coefficients

    def gram_deviation(self) -> float:
        return float(np.max(np.abs(self.gram() - np.eye(self.N))))

    def validate(self, tol: float = GRAM_TOL) -> None:
        """Raise ValidationError if the Gram matrix is off the identity by more than tol."""
        deviation = self.gram_deviation()
        if deviation > tol:
            raise ValidationError(
                f"orbitals are not orthonormal (Gram deviation {deviation:.2e} > {tol:.0e})"
            )

    def complement_basis(self) -> NDArray[np.complex128]:
        """Orthonormal basis (M x (M - N)) of the orthogonal complement of the span."""
        return scipy.linalg.null_space(self.coefficients.conj().T).astype(np.complex128)


def lowest_eigenvectors(model: LatticeModel, N: int) -> OrbitalSet:
    """The N lowest eigenvectors of h0 (the free Fermi sea)."""
    if not 1 <= N <= model.M:
        raise DomainError(f"need 1 <= N <= M={model.M}, got N={N}")
    _, vectors = np.linalg.eigh(model.one_body_matrix())
    return OrbitalSet(vectors[:, :N])


def plane_wave_momenta(N: int) -> list[int]:
    """Momenta 0, 1, -1, 2, -2, ... filled in increasing |k|."""
    ks = [0]
    k = 1
    while len(ks) < N:
        ks.append(k)
        if len(ks) < N:
            ks.append(-k)
        k += 1
    return ks


def plane_waves(M: int, N: int) -> OrbitalSet:
    """phi_k(x) = exp(2 pi i k x / M) / sqrt(M) for the N smallest |k|."""
    if not 1 <= N <= M:
        raise DomainError(f"need 1 <= N <= M={M}, got N={N}")
    x = np.arange(M)
    ks = np.array(plane_wave_momenta(N))
    return OrbitalSet(np.exp(2j * np.pi * np.outer(x, ks) / M) / np.sqrt(M))


def random_orthonormal(M: int, N: int, rng: np.random.Generator) -> OrbitalSet:
    """Seeded random orthonormal set from the QR factor of a complex Gaussian matrix."""
    if not 1 <= N <= M:
        raise DomainError(f"need 1 <= N <= M={M}, got N={N}")
    z = rng.standard_normal((M, N)) + 1j * rng.standard_normal((M, N))
    q, r = np.linalg.qr(z)
    # fix the phase freedom so the result depends only on the draw
    phases = np.diag(r) / np.abs(np.diag(r))
    return OrbitalSet(q * phases[None, :])


def replace_orbital(orbitals: OrbitalSet, index: int, chi: NDArray[np.complex128]) -> OrbitalSet:
    """Swap orbital ``index`` for a vector orthogonal to the whole set.

    Raises:
        ValidationError: If chi has overlap with any of the orbitals.
    """
    chi = np.asarray(chi, dtype=np.complex128)
    overlaps = orbitals.coefficients.conj().T @ chi
    if np.max(np.abs(overlaps)) > GRAM_TOL:
        raise ValidationError("replacement vector is not orthogonal to the orbitals")
    coefficients = orbitals.coefficients.copy()
    coefficients[:, index] = chi / np.linalg.norm(chi)
    return OrbitalSet(coefficients, orbitals.t)


def initial_orbitals(
    recipe: str, model: LatticeModel, N: int, rng: np.random.Generator | None = None
) -> OrbitalSet:
    """Initial data by recipe name: ``lowest``, ``plane_waves`` or ``random``."""
    match recipe:
        case "lowest":
            return lowest_eigenvectors(model, N)
        case "plane_waves":
            return plane_waves(model.M, N)
        case "random":
            return random_orthonormal(model.M, N, rng or np.random.default_rng(0))
    raise DomainError(f"unknown orbital recipe {recipe!r}")
