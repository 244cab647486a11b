"""Counting functional alpha_f and the projector algebra behind it."""

from meanfield_lab.counting.functional import (
    ComplementProjector,
    alpha_f,
    alpha_from_distribution,
    alpha_n,
    alpha_n_via_density,
    excitation_distribution,
    outside_number_operator,
)
from meanfield_lab.counting.tensor_oracle import (
    IdentityCheck,
    RootedNormReport,
    check_n_hat_identity,
    check_orthogonal_projectors,
    check_powers,
    check_qq_bound,
    check_resolution_of_identity,
    check_shift_lemma,
    diagonal_in_pnk,
    f_hat_tensor,
    p_slot,
    pair_projector,
    pnk_tensor,
    q_slot,
    root_shift_forms,
    rooted_norm_bounds,
)
from meanfield_lab.counting.weights import WeightFunction, weight_from_name, weight_m, weight_n

__all__ = [
    "ComplementProjector",
    "IdentityCheck",
    "RootedNormReport",
    "WeightFunction",
    "alpha_f",
    "alpha_from_distribution",
    "alpha_n",
    "alpha_n_via_density",
    "check_n_hat_identity",
    "check_orthogonal_projectors",
    "check_powers",
    "check_qq_bound",
    "check_resolution_of_identity",
    "check_shift_lemma",
    "diagonal_in_pnk",
    "excitation_distribution",
    "f_hat_tensor",
    "outside_number_operator",
    "p_slot",
    "pair_projector",
    "pnk_tensor",
    "q_slot",
    "root_shift_forms",
    "rooted_norm_bounds",
    "weight_from_name",
    "weight_m",
    "weight_n",
]
