"""Commutator trace norms of the orbital projector along the semiclassical flow.

On the 1D lattice at fixed filling the semiclassical parameter is epsilon = 1/N:
the hopping is multiplied by epsilon^2, the generator divided by epsilon, and
the interaction carries 1/N.
"""

from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from math import comb

import logfire
import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from meanfield_lab.counting.functional import alpha_n
from meanfield_lab.errors import DomainError, ValidationError
from meanfield_lab.estimates.assumptions import assumption_quantities, basic_rate
from meanfield_lab.estimates.gronwall import gronwall_envelope
from meanfield_lab.fock.evolution import Propagator
from meanfield_lab.fock.operators import schrodinger_generator
from meanfield_lab.fock.sector import DEFAULT_SECTOR_CAP, build_sector
from meanfield_lab.fock.states import slater_state
from meanfield_lab.meanfield.flow import integrate_orbitals
from meanfield_lab.meanfield.model import LatticeModel
from meanfield_lab.meanfield.orbitals import OrbitalSet
from meanfield_lab.scaling3d.fits import fit_growth_rate

PROJECTOR_TOL = 1e-8


def commutator_trace_norm(p: NDArray[np.complex128], U: NDArray[np.complex128]) -> float:
    """||p U - U p||_tr from the singular values.

    Raises:
        ValidationError: If p is not a projector or the shapes differ.
    """
    if p.shape != U.shape or p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ValidationError(f"need square matrices of equal shape, got {p.shape} and {U.shape}")
    defect = float(np.max(np.abs(p @ p - p)))
    if defect > PROJECTOR_TOL:
        raise ValidationError(f"p is not a projector (|p^2 - p| = {defect:.2e})")
    return float(np.sum(scipy.linalg.svdvals(p @ U - U @ p)))


def phase_matrix(M: int, k: int) -> NDArray[np.complex128]:
    """Multiplication by exp(2 pi i k x / M)."""
    x = np.arange(M)
    return np.diag(np.exp(2j * np.pi * k * x / M))


def gradient_matrix(M: int) -> NDArray[np.complex128]:
    """Forward difference (f(x + 1) - f(x)) with periodic wrap."""
    shift = np.roll(np.eye(M), -1, axis=0)
    return (shift - np.eye(M)).astype(np.complex128)


def semiclassical_model(base: LatticeModel, N: int) -> LatticeModel:
    """Hopping times epsilon^2, generator over epsilon, interaction over N; epsilon = 1/N."""
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    epsilon = 1.0 / N
    return replace(base, hopping=base.hopping * epsilon**2, epsilon=epsilon, beta=1.0)


@dataclass
class SemiclassicalDiagnostics:
    """Trace-norm series on a time grid, plus alpha_n and its envelope when coupled."""

    N: int
    M: int
    epsilon: float
    modes: list[int]
    times: list[float] = field(default_factory=list)
    phase_norms: dict[int, list[float]] = field(default_factory=dict)
    gradient_norms: list[float] = field(default_factory=list)
    alpha_n: list[float] | None = None
    envelope: list[float] | None = None

    def growth_rates(self) -> dict[str, float]:
        """Fitted exponential rates of each series; reported, never asserted."""
        rates = {
            f"phase k={k}": fit_growth_rate(self.times, v) for k, v in self.phase_norms.items()
        }
        rates["gradient"] = fit_growth_rate(self.times, self.gradient_norms)
        return rates

    @property
    def envelope_margin(self) -> float | None:
        if self.alpha_n is None or self.envelope is None:
            return None
        return min(e - a for a, e in zip(self.alpha_n, self.envelope, strict=True))

    def to_rows(self) -> list[dict[str, float]]:
        rows = []
        for i, t in enumerate(self.times):
            row: dict[str, float] = {"N": self.N, "M": self.M, "epsilon": self.epsilon, "t": t}
            for k in self.modes:
                row[f"phase_k{k}"] = self.phase_norms[k][i]
            row["gradient"] = self.gradient_norms[i]
            if self.alpha_n is not None and self.envelope is not None:
                row["alpha_n"] = self.alpha_n[i]
                row["envelope"] = self.envelope[i]
            rows.append(row)
        return rows


def static_diagnostics(orbitals: OrbitalSet, modes: Sequence[int]) -> dict[str, float]:
    """Trace norms for a single orbital set."""
    p = orbitals.projector()
    values = {
        f"phase k={k}": commutator_trace_norm(p, phase_matrix(orbitals.M, k)) for k in modes
    }
    values["gradient"] = commutator_trace_norm(p, gradient_matrix(orbitals.M))
    return values


def semiclassical_run(
    model: LatticeModel,
    orbitals: OrbitalSet,
    t_final: float,
    dt: float,
    modes: Sequence[int] = (1,),
    exchange: bool = False,
    record_every: int = 1,
    coupled: bool = True,
    sector_cap: int = DEFAULT_SECTOR_CAP,
) -> SemiclassicalDiagnostics:
    """Integrate the epsilon-scaled orbital flow and record trace-norm diagnostics.

    ``model`` should come from ``semiclassical_model``. With ``coupled`` and a
    sector within ``sector_cap``, the exact state started from the Slater
    determinant is propagated as well, and alpha_n is recorded with the envelope
    built from C = 24 sqrt(D) / epsilon.
    """
    trajectory = integrate_orbitals(
        orbitals, model, t_final, dt, exchange=exchange, record_every=record_every
    )
    N, M = orbitals.N, orbitals.M
    phase_ops = {k: phase_matrix(M, k) for k in modes}
    gradient = gradient_matrix(M)
    diagnostics = SemiclassicalDiagnostics(
        N=N,
        M=M,
        epsilon=model.epsilon,
        modes=list(modes),
        phase_norms={k: [] for k in modes},
    )
    for state in trajectory.states:
        p = state.projector()
        p = 0.5 * (p + p.conj().T)
        diagnostics.times.append(state.t)
        for k, U in phase_ops.items():
            diagnostics.phase_norms[k].append(commutator_trace_norm(p, U))
        diagnostics.gradient_norms.append(commutator_trace_norm(p, gradient))

    dimension = comb(M, N)
    if coupled and dimension <= sector_cap:
        sector = build_sector(M, N, cap=sector_cap)
        propagator = Propagator(schrodinger_generator(model, sector))
        psi0 = slater_state(orbitals, sector)
        alphas = []
        rates = []
        for state in trajectory.states:
            psi = propagator.evolve(psi0, state.t - orbitals.t)
            alphas.append(alpha_n(psi, state))
            rates.append(basic_rate(assumption_quantities(state, model, 1.0), model.epsilon))
        times = np.array(diagnostics.times)
        envelope = gronwall_envelope(alphas[0], np.array(rates), 1.0, N, times)
        diagnostics.alpha_n = alphas
        diagnostics.envelope = [float(v) for v in envelope.values]
    elif coupled:
        logfire.info("Skipping coupled exact run", N=N, M=M, dimension=dimension, cap=sector_cap)
    return diagnostics
