"""Derivative decomposition, lemma bounds, size conditions and Gronwall envelopes."""

from meanfield_lab.estimates.assumptions import (
    AssumptionQuantities,
    KernelSums,
    assumption_quantities,
    basic_rate,
    free_limit_delta,
    general_delta,
    general_rate,
    omega_ball,
    omega_mask,
)
from meanfield_lab.estimates.bounds import free_limit_budget_rate, term_bound_check, term_bounds
from meanfield_lab.estimates.derivative import (
    DerivativeDecomposition,
    commutator_form,
    derivative_three_terms,
    finite_difference_alpha,
    three_term_operators,
)
from meanfield_lab.estimates.diagonalize import (
    PairDiagonalization,
    diagonalize_pvp,
    sandwich_inequalities,
    split_kernel,
)
from meanfield_lab.estimates.gronwall import GronwallEnvelope, gronwall_envelope
from meanfield_lab.estimates.margins import MARGIN_TOL, BoundMargin, MarginReport
from meanfield_lab.estimates.variance import (
    fluctuation_variance,
    fock_variance,
    variance_ceiling,
    variance_profile,
)

__all__ = [
    "MARGIN_TOL",
    "AssumptionQuantities",
    "BoundMargin",
    "DerivativeDecomposition",
    "GronwallEnvelope",
    "KernelSums",
    "MarginReport",
    "PairDiagonalization",
    "assumption_quantities",
    "basic_rate",
    "commutator_form",
    "derivative_three_terms",
    "diagonalize_pvp",
    "finite_difference_alpha",
    "fluctuation_variance",
    "fock_variance",
    "free_limit_budget_rate",
    "free_limit_delta",
    "general_delta",
    "general_rate",
    "gronwall_envelope",
    "omega_ball",
    "omega_mask",
    "sandwich_inequalities",
    "split_kernel",
    "term_bound_check",
    "term_bounds",
    "three_term_operators",
    "variance_ceiling",
    "variance_profile",
]
