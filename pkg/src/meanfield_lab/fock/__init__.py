"""Exact N-fermion quantum mechanics on an M-mode single-particle space."""

from meanfield_lab.fock.evolution import Propagator, evolve_exact, krylov_expmv
from meanfield_lab.fock.operators import (
    HermitianOperator,
    build_hamiltonian,
    check_hermitian,
    interaction_diagonal,
    lift_one_body,
    one_body_correlations,
    schrodinger_generator,
)
from meanfield_lab.fock.sector import DEFAULT_SECTOR_CAP, SectorBasis, build_sector
from meanfield_lab.fock.states import ManyBodyState, basis_state, random_state, slater_state
from meanfield_lab.fock.tensor import (
    TENSOR_CAP,
    TensorOperator,
    TensorState,
    antisymmetrize,
    dense_operator,
    from_tensor,
    identity_operator,
    one_body_operator,
    pair_multiplication,
    pair_operator,
    product_tensor,
    random_antisymmetric,
    slater_tensor,
    tensor_representation,
)

__all__ = [
    "DEFAULT_SECTOR_CAP",
    "HermitianOperator",
    "ManyBodyState",
    "Propagator",
    "SectorBasis",
    "TENSOR_CAP",
    "TensorOperator",
    "TensorState",
    "antisymmetrize",
    "basis_state",
    "build_hamiltonian",
    "build_sector",
    "check_hermitian",
    "dense_operator",
    "evolve_exact",
    "from_tensor",
    "identity_operator",
    "interaction_diagonal",
    "krylov_expmv",
    "lift_one_body",
    "one_body_correlations",
    "one_body_operator",
    "pair_multiplication",
    "pair_operator",
    "product_tensor",
    "random_antisymmetric",
    "random_state",
    "schrodinger_generator",
    "slater_state",
    "slater_tensor",
    "tensor_representation",
]
