"""Hartree and Hartree-Fock flows for N orbitals on a lattice model."""

from meanfield_lab.meanfield.flow import (
    Trajectory,
    direct_energy,
    exchange_energy,
    exchange_matrix,
    fock_matrix,
    hartree_energy,
    hartree_rhs,
    integrate_orbitals,
    mean_field_potential,
    rk4_step,
    step_count,
)
from meanfield_lab.meanfield.model import (
    LatticeModel,
    constant_kernel,
    contact_kernel,
    exponential_kernel,
    field_profile,
    inverse_distance_kernel,
    kernel_from_config,
    nearest_neighbor_kernel,
    periodic_convolution,
    periodic_distance,
    random_kernel,
    zero_kernel,
)
from meanfield_lab.meanfield.orbitals import (
    GRAM_TOL,
    OrbitalSet,
    initial_orbitals,
    lowest_eigenvectors,
    plane_wave_momenta,
    plane_waves,
    random_orthonormal,
    replace_orbital,
)

__all__ = [
    "GRAM_TOL",
    "LatticeModel",
    "OrbitalSet",
    "Trajectory",
    "constant_kernel",
    "contact_kernel",
    "direct_energy",
    "exchange_energy",
    "exchange_matrix",
    "exponential_kernel",
    "field_profile",
    "fock_matrix",
    "hartree_energy",
    "hartree_rhs",
    "initial_orbitals",
    "integrate_orbitals",
    "inverse_distance_kernel",
    "kernel_from_config",
    "lowest_eigenvectors",
    "mean_field_potential",
    "nearest_neighbor_kernel",
    "periodic_convolution",
    "periodic_distance",
    "plane_wave_momenta",
    "plane_waves",
    "random_kernel",
    "random_orthonormal",
    "replace_orbital",
    "rk4_step",
    "step_count",
    "zero_kernel",
]
