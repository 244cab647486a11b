"""Reduced density matrices and the distance apparatus."""

from meanfield_lab.density.lemmas import DensityLemmaReport, check_density_lemma
from meanfield_lab.density.reduced import (
    NormDistances,
    ReducedDensityMatrix,
    norm_distances,
    norm_distances_of,
    reduced_density,
    slater_density,
    tensor_partial_trace,
)

__all__ = [
    "DensityLemmaReport",
    "NormDistances",
    "ReducedDensityMatrix",
    "check_density_lemma",
    "norm_distances",
    "norm_distances_of",
    "reduced_density",
    "slater_density",
    "tensor_partial_trace",
]
