"""Variance of the mean-field interaction felt at a site."""

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError
from meanfield_lab.fock.operators import lift_one_body
from meanfield_lab.fock.sector import DEFAULT_SECTOR_CAP, build_sector
from meanfield_lab.fock.states import slater_state
from meanfield_lab.meanfield.model import LatticeModel, periodic_convolution
from meanfield_lab.meanfield.orbitals import OrbitalSet


def _shifted_kernel(model: LatticeModel, y: int) -> NDArray[np.float64]:
    M = model.M
    if not 0 <= y < M:
        raise DomainError(f"site {y} out of range for M={M}")
    return model.v[(np.arange(M) - y) % M]


def fluctuation_variance(orbitals: OrbitalSet, model: LatticeModel, y: int) -> float:
    """(v^2 * rho)(y) - sum_{i,j} |<phi_i, v(. - y) phi_j>|^2 with the unscaled v.

    Lies in [0, (v^2 * rho)(y)] for orthonormal orbitals.
    """
    u = _shifted_kernel(model, y)
    phi = orbitals.coefficients
    second_moment = float(np.dot(u**2, orbitals.density()))
    matrix = phi.conj().T @ (u[:, None] * phi)
    return second_moment - float(np.sum(np.abs(matrix) ** 2))


def fock_variance(
    orbitals: OrbitalSet, model: LatticeModel, y: int, cap: int = DEFAULT_SECTOR_CAP
) -> float:
    """<A^2> - <A>^2 for A = sum_x v(x - y) n_x in the Slater state of the orbitals.

    Built on the occupation basis, independently of the orbital formula.

    Raises:
        SizeLimitError: If the sector exceeds ``cap``.
    """
    u = _shifted_kernel(model, y)
    sector = build_sector(model.M, orbitals.N, cap=cap)
    psi = slater_state(orbitals, sector)
    A = lift_one_body(np.diag(u).astype(np.complex128), sector)
    image = A.apply(psi.amplitudes)
    mean = A.expectation(psi)
    return float(np.vdot(image, image).real) - mean**2


def variance_profile(orbitals: OrbitalSet, model: LatticeModel) -> NDArray[np.float64]:
    """fluctuation_variance at every site."""
    return np.array([fluctuation_variance(orbitals, model, y) for y in range(model.M)])


def variance_ceiling(orbitals: OrbitalSet, model: LatticeModel) -> NDArray[np.float64]:
    """(v^2 * rho)(y) for every site."""
    return periodic_convolution(model.v**2, orbitals.density())
