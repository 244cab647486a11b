"""Inequalities between alpha and density-matrix distances."""

from dataclasses import dataclass, field

import numpy as np

from meanfield_lab.counting.functional import (
    ComplementProjector,
    alpha_from_distribution,
    excitation_distribution,
)
from meanfield_lab.counting.weights import weight_m, weight_n
from meanfield_lab.density.reduced import (
    NormDistances,
    norm_distances,
    norm_distances_of,
    reduced_density,
    slater_density,
)
from meanfield_lab.fock.states import ManyBodyState
from meanfield_lab.meanfield.orbitals import OrbitalSet

MARGIN_TOL = 1e-10


@dataclass
class DensityLemmaReport:
    """Margins (bound minus bounded side) for one state; all should be >= -tol."""

    N: int
    alpha_n: float
    distances: NormDistances
    margins: dict[str, float] = field(default_factory=dict)
    identities: dict[str, float] = field(default_factory=dict)

    @property
    def worst_margin(self) -> float:
        return min(self.margins.values(), default=0.0)

    @property
    def worst_identity_gap(self) -> float:
        return max(self.identities.values(), default=0.0)

    def passed(self, tol: float = MARGIN_TOL) -> bool:
        return self.worst_margin >= -tol and self.worst_identity_gap <= tol

    def to_dict(self) -> dict[str, object]:
        return {
            "N": self.N,
            "alpha_n": self.alpha_n,
            "distances": self.distances.to_dict(),
            "margins": self.margins,
            "identities": self.identities,
        }


def check_density_lemma(
    state: ManyBodyState,
    orbitals: OrbitalSet,
    gammas: tuple[float, ...] = (0.5, 1.0),
) -> DensityLemmaReport:
    """Evaluate the alpha / trace / HS / op-norm inequality chain.

    Margins:
      tr^2 <= 8 alpha_n <= 8 sqrt(N) HS
      N HS^2 <= 2 alpha_n <= tr
      alpha_n <= N op
      alpha_m >= alpha_n, tr^2 <= 8 alpha_m, N HS^2 <= 2 alpha_m  for each gamma
      ||mu||_op <= 1/N
    Identities (absolute gaps):
      ||q mu q||_tr = alpha_n = ||p/N - p mu p||_tr
    """
    N = state.N
    mu = reduced_density(state)
    reference = slater_density(orbitals)
    d = norm_distances(mu, reference)
    distribution = excitation_distribution(state, orbitals)
    a_n = alpha_from_distribution(distribution, weight_n(N))

    margins = {
        "tr^2 <= 8 alpha_n": 8.0 * a_n - d.trace**2,
        "8 alpha_n <= 8 sqrt(N) hs": 8.0 * np.sqrt(N) * d.hs - 8.0 * a_n,
        "N hs^2 <= 2 alpha_n": 2.0 * a_n - N * d.hs**2,
        "2 alpha_n <= tr": d.trace - 2.0 * a_n,
        "alpha_n <= N op": N * d.op - a_n,
        "pauli: op(mu) <= 1/N": -mu.pauli_excess(),
    }
    for gamma in gammas:
        a_m = alpha_from_distribution(distribution, weight_m(N, gamma))
        margins[f"alpha_m({gamma:g}) >= alpha_n"] = a_m - a_n
        margins[f"tr^2 <= 8 alpha_m({gamma:g})"] = 8.0 * a_m - d.trace**2
        margins[f"N hs^2 <= 2 alpha_m({gamma:g})"] = 2.0 * a_m - N * d.hs**2

    projectors = ComplementProjector.from_orbitals(orbitals)
    p, q = projectors.p, projectors.q
    qmq = norm_distances_of(q @ mu.matrix @ q).trace
    pmp = norm_distances_of(p / N - p @ mu.matrix @ p).trace
    identities = {
        "||q mu q||_tr = alpha_n": abs(qmq - a_n),
        "||p/N - p mu p||_tr = alpha_n": abs(pmp - a_n),
    }
    return DensityLemmaReport(N=N, alpha_n=a_n, distances=d, margins=margins, identities=identities)
