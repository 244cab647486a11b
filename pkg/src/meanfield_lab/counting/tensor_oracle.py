"""First-quantized projector algebra on tiny tensor spaces.

P_{N,k} is the symmetrized product of k one-body complements q and N - k
projectors p, one per particle slot. f_hat_d = sum_k f(k + d) P_{N,k}. The
identities checked here hold as matrix equalities on the full tensor space
unless a function says it needs an antisymmetric state.
"""

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.counting.functional import ComplementProjector
from meanfield_lab.counting.weights import WeightFunction, weight_m, weight_n
from meanfield_lab.errors import DomainError, ValidationError
from meanfield_lab.fock.tensor import (
    TensorOperator,
    TensorState,
    check_tensor_size,
    identity_operator,
    one_body_operator,
    pair_operator,
)
from meanfield_lab.meanfield.orbitals import OrbitalSet


def p_slot(orbitals: OrbitalSet, slot: int, N: int) -> TensorOperator:
    return one_body_operator(ComplementProjector.from_orbitals(orbitals).p, slot, N)


def q_slot(orbitals: OrbitalSet, slot: int, N: int) -> TensorOperator:
    return one_body_operator(ComplementProjector.from_orbitals(orbitals).q, slot, N)


def pnk_tensor(orbitals: OrbitalSet, k: int, N: int | None = None) -> TensorOperator:
    """P_{N,k}: sum over slot subsets of size k of prod q_(subset) prod p_(rest).

    ``N`` defaults to the number of orbitals; k outside 0..N gives the zero operator.
    """
    N = orbitals.N if N is None else N
    M = orbitals.M
    check_tensor_size(M, N)
    if k < 0 or k > N:
        return identity_operator(M, N).scaled(0.0)
    projectors = ComplementProjector.from_orbitals(orbitals)
    terms = []
    for subset in combinations(range(N), k):
        factors = [
            one_body_operator(projectors.q if slot in subset else projectors.p, slot, N)
            for slot in range(N)
        ]
        terms.append(reduce(lambda a, b: a @ b, factors))
    return reduce(lambda a, b: a + b, terms)


def f_hat_tensor(
    f: WeightFunction, orbitals: OrbitalSet, d: int = 0, N: int | None = None
) -> TensorOperator:
    """f_hat_d = sum_{k=0}^N f(k + d) P_{N,k}."""
    N = orbitals.N if N is None else N
    if f.N != N:
        raise ValidationError(f"weight is defined for N={f.N}, tensor space has N={N}")
    return diagonal_in_pnk(f.shifted(d), orbitals, N)


def diagonal_in_pnk(
    coefficients: NDArray[np.float64], orbitals: OrbitalSet, N: int | None = None
) -> TensorOperator:
    """sum_k c_k P_{N,k} for k = 0..N."""
    N = orbitals.N if N is None else N
    if coefficients.shape != (N + 1,):
        raise ValidationError(f"need N + 1 = {N + 1} coefficients, got {coefficients.shape}")
    total = identity_operator(orbitals.M, N).scaled(0.0)
    for k, c in enumerate(coefficients):
        if c != 0.0:
            total = total + pnk_tensor(orbitals, k, N).scaled(float(c))
    return total


def pair_projector(orbitals: OrbitalSet, a: int, N: int) -> TensorOperator:
    """P_a on slots (0, 1): p1p2 for a=0, p1q2 + q1p2 for a=1, q1q2 for a=2."""
    if a not in (0, 1, 2):
        raise DomainError(f"pair projector index must be 0, 1 or 2, got {a}")
    p1, p2 = p_slot(orbitals, 0, N), p_slot(orbitals, 1, N)
    q1, q2 = q_slot(orbitals, 0, N), q_slot(orbitals, 1, N)
    if a == 0:
        return p1 @ p2
    if a == 1:
        return p1 @ q2 + q1 @ p2
    return q1 @ q2


# --- projector-algebra identities ----------------------------------------------


@dataclass
class IdentityCheck:
    """Largest matrix deviation observed for a named identity."""

    name: str
    deviation: float
    tolerance: float
    details: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    @property
    def margin(self) -> float:
        return self.tolerance - self.deviation

    def to_dict(self) -> dict[str, object]:
        return {
            "name": self.name,
            "deviation": self.deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "details": self.details,
        }


def _max_abs(matrix: NDArray[np.complex128]) -> float:
    return float(np.max(np.abs(matrix))) if matrix.size else 0.0


def check_resolution_of_identity(orbitals: OrbitalSet, tol: float = 1e-12) -> IdentityCheck:
    """sum_k P_{N,k} = 1."""
    N = orbitals.N
    total = reduce(lambda a, b: a + b, [pnk_tensor(orbitals, k) for k in range(N + 1)])
    dim = orbitals.M**N
    return IdentityCheck("sum_k P_Nk = 1", _max_abs(total.to_matrix() - np.eye(dim)), tol)


def check_orthogonal_projectors(orbitals: OrbitalSet, tol: float = 1e-12) -> IdentityCheck:
    """P_{N,k} P_{N,l} = delta_kl P_{N,k}."""
    N = orbitals.N
    mats = [pnk_tensor(orbitals, k).to_matrix() for k in range(N + 1)]
    worst = 0.0
    for k in range(N + 1):
        for ell in range(N + 1):
            expected = mats[k] if k == ell else np.zeros_like(mats[k])
            worst = max(worst, _max_abs(mats[k] @ mats[ell] - expected))
    return IdentityCheck("P_Nk P_Nl = delta P_Nk", worst, tol)


def check_powers(f: WeightFunction, orbitals: OrbitalSet, tol: float = 1e-12) -> IdentityCheck:
    """(f_hat)^2 = f_hat(f^2)."""
    F = f_hat_tensor(f, orbitals).to_matrix()
    F2 = f_hat_tensor(f.power(2.0), orbitals).to_matrix()
    return IdentityCheck("f_hat^2 = (f^2)_hat", _max_abs(F @ F - F2), tol)


def check_shift_lemma(
    f: WeightFunction,
    orbitals: OrbitalSet,
    h12: NDArray[np.complex128],
    tol: float = 1e-12,
) -> IdentityCheck:
    """(P_a h12 P_b) f_hat = f_hat_{b-a} (P_a h12 P_b) and the mirrored form, a, b in 0..2."""
    N = orbitals.N
    h = pair_operator(h12, 0, 1, N).to_matrix()
    F = {d: f_hat_tensor(f, orbitals, d).to_matrix() for d in range(-2, 3)}
    P = [pair_projector(orbitals, a, N).to_matrix() for a in range(3)]
    worst = 0.0
    details: dict[str, float] = {}
    for a in range(3):
        for b in range(3):
            sandwich = P[a] @ h @ P[b]
            right_to_left = _max_abs(sandwich @ F[0] - F[b - a] @ sandwich)
            left_to_right = _max_abs(F[0] @ sandwich - sandwich @ F[a - b])
            details[f"a={a},b={b}"] = max(right_to_left, left_to_right)
            worst = max(worst, right_to_left, left_to_right)
    return IdentityCheck("shift of f_hat through P_a h P_b", worst, tol, details)


def check_n_hat_identity(
    state: TensorState, orbitals: OrbitalSet, tol: float = 1e-12
) -> IdentityCheck:
    """<psi, n_hat psi> = <psi, q_1 psi> and n_hat = (1/N) sum_m q_m, antisymmetric psi."""
    N = state.N
    n_hat = f_hat_tensor(weight_n(N), orbitals)
    q_sum = reduce(lambda a, b: a + b, [q_slot(orbitals, m, N) for m in range(N)]).scaled(1.0 / N)
    operator_gap = _max_abs(n_hat.apply(state) - q_sum.apply(state))
    value_gap = abs(n_hat.expectation(state) - q_slot(orbitals, 0, N).expectation(state))
    return IdentityCheck(
        "alpha_n = <q_1>",
        max(operator_gap, value_gap),
        tol,
        {"operator": operator_gap, "expectation": value_gap},
    )


def check_qq_bound(state: TensorState, orbitals: OrbitalSet, tol: float = 1e-12) -> IdentityCheck:
    """<q1 q2> <= N/(N-1) <n_hat^2> on an antisymmetric state; deviation is the excess."""
    N = state.N
    if N < 2:
        raise DomainError("q1 q2 bound needs N >= 2")
    lhs = (q_slot(orbitals, 0, N) @ q_slot(orbitals, 1, N)).expectation(state).real
    rhs = N / (N - 1) * f_hat_tensor(weight_n(N).power(2.0), orbitals).expectation(state).real
    return IdentityCheck(
        "<q1 q2> <= N/(N-1) <n^2>", max(0.0, lhs - rhs), tol, {"lhs": lhs, "rhs": rhs}
    )


# --- rooted weights --------------------------------------------------------------


def _root(coefficients: NDArray[np.float64]) -> NDArray[np.float64]:
    # negative entries only occur on P_{N,k} that the surrounding pair projector annihilates
    return np.sqrt(np.clip(coefficients, 0.0, None))


def root_shift_forms(
    state: TensorState,
    f: WeightFunction,
    orbitals: OrbitalSet,
    h12: NDArray[np.complex128],
    a: int,
    b: int,
    d: int,
) -> tuple[complex, complex, complex]:
    """The three equal scalar products of the root-shift identity.

    1. <psi, (f_hat - f_hat_{-d}) P_a h12 P_b psi>
    2. root of (f_hat - f_hat_{-d}) on the left, root of
       f_hat_{a-b} - f_hat_{a-b-d} + sum_{l=1}^{a-b} f(N-d+l) P_{N,N-(a-b)+l} on the right
    3. as 2 without the boundary sum.
    """
    if not f.is_monotone():
        raise DomainError("root shift needs a monotone weight")
    if d not in (1, 2) or a not in (0, 1, 2) or b not in (0, 1, 2):
        raise DomainError(f"need a, b in 0..2 and d in 1..2, got a={a}, b={b}, d={d}")
    N = state.N
    h = pair_operator(h12, 0, 1, N)
    sandwich = pair_projector(orbitals, a, N) @ h @ pair_projector(orbitals, b, N)
    left = f.shifted(0) - f.shifted(-d)
    right = f.shifted(a - b) - f.shifted(a - b - d)
    boundary = np.zeros(N + 1)
    for ell in range(1, a - b + 1):
        boundary[N - (a - b) + ell] += f(N - d + ell)

    plain = (diagonal_in_pnk(left, orbitals) @ sandwich).expectation(state)
    root_left = diagonal_in_pnk(_root(left), orbitals)
    root_right = diagonal_in_pnk(_root(right + boundary), orbitals)
    root_right_bare = diagonal_in_pnk(_root(right), orbitals)
    with_boundary = (root_left @ sandwich @ root_right).expectation(state)
    without_boundary = (root_left @ sandwich @ root_right_bare).expectation(state)
    return plain, with_boundary, without_boundary


@dataclass
class RootedNormReport:
    """Norms of the rooted states against their explicit bounds for one (d, c)."""

    d: int
    c: int
    values: dict[str, float]
    bounds: dict[str, float]

    @property
    def margins(self) -> dict[str, float]:
        return {key: self.bounds[key] - self.values[key] for key in self.values}

    @property
    def worst_margin(self) -> float:
        return min(self.margins.values())


def rooted_norm_bounds(
    state: TensorState, orbitals: OrbitalSet, gamma: float
) -> list[RootedNormReport]:
    """Explicit norm bounds for psi~_1 = (m - m_{-d})^{1/2} psi and psi~_0.

    psi~_0 = (m_d - m + sum_{l=1}^d m(N-d+l) P_{N,N-d+l})^{1/2} psi. For d in {1, 2}
    and c in {0, 1}:
      ||psi~_c||^2          <= d N^-gamma
      ||q1 psi~_c||^2       <= d (d+1)^c N^-1 alpha_m
      ||q1 q2 psi~_c||^2    <= d (d+1)^(2c) N^(gamma-2) alpha_m
    """
    N = state.N
    if N < 2:
        raise DomainError("rooted norm bounds need N >= 2")
    m = weight_m(N, gamma)
    alpha_m = f_hat_tensor(m, orbitals).expectation(state).real
    q1 = q_slot(orbitals, 0, N)
    q1q2 = q1 @ q_slot(orbitals, 1, N)

    reports = []
    for d in (1, 2):
        boundary = np.zeros(N + 1)
        for ell in range(1, d + 1):
            boundary[N - d + ell] += m(N - d + ell)
        coefficients = {
            1: m.shifted(0) - m.shifted(-d),
            0: m.shifted(d) - m.shifted(0) + boundary,
        }
        for c in (0, 1):
            rooted = diagonal_in_pnk(_root(coefficients[c]), orbitals).apply(state)
            values = {
                "norm": float(np.linalg.norm(rooted)) ** 2,
                "q1": float(np.linalg.norm(q1(rooted))) ** 2,
                "q1q2": float(np.linalg.norm(q1q2(rooted))) ** 2,
            }
            bounds = {
                "norm": d * N ** (-gamma),
                "q1": d * (d + 1) ** c / N * alpha_m,
                "q1q2": d * (d + 1) ** (2 * c) * N ** (gamma - 2.0) * alpha_m,
            }
            reports.append(RootedNormReport(d, c, values, bounds))
    return reports
