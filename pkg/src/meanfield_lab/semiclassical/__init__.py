"""Semiclassical scaling diagnostics on the lattice."""

from meanfield_lab.semiclassical.diagnostics import (
    SemiclassicalDiagnostics,
    commutator_trace_norm,
    gradient_matrix,
    phase_matrix,
    semiclassical_model,
    semiclassical_run,
    static_diagnostics,
)

__all__ = [
    "SemiclassicalDiagnostics",
    "commutator_trace_norm",
    "gradient_matrix",
    "phase_matrix",
    "semiclassical_model",
    "semiclassical_run",
    "static_diagnostics",
]
