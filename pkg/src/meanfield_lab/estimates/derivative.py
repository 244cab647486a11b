"""Time derivative of alpha_f split into its three sandwich terms.

All terms are evaluated on the first-quantized tensor oracle, with slots 0 and
1 playing particles 1 and 2. ``V`` is the direct mean field v^(N) * rho, or
zero when the comparison flow is free.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.counting.functional import alpha_f
from meanfield_lab.counting.tensor_oracle import f_hat_tensor, p_slot, q_slot
from meanfield_lab.counting.weights import WeightFunction, weight_n
from meanfield_lab.errors import ValidationError
from meanfield_lab.fock.evolution import evolve_exact
from meanfield_lab.fock.operators import schrodinger_generator
from meanfield_lab.fock.states import ManyBodyState
from meanfield_lab.fock.tensor import (
    TensorOperator,
    TensorState,
    one_body_operator,
    pair_multiplication,
    tensor_representation,
)
from meanfield_lab.meanfield.flow import mean_field_potential, rk4_step
from meanfield_lab.meanfield.model import LatticeModel
from meanfield_lab.meanfield.orbitals import OrbitalSet

DEFAULT_FD_STEP = 1e-3


@dataclass
class DerivativeDecomposition:
    """t1 (qp-pp), t2 (qq-pp) and t3 (qq-pq) of d/dt alpha_f."""

    t1_qp_pp: float
    t2_qq_pp: float
    t3_qq_pq: float
    commutator: float | None = None
    fd_reference: float | None = None

    @property
    def total(self) -> float:
        return self.t1_qp_pp + self.t2_qq_pp + self.t3_qq_pq

    @property
    def fd_gap(self) -> float | None:
        """|total - fd| relative to 1 + |fd|."""
        if self.fd_reference is None:
            return None
        return abs(self.total - self.fd_reference) / (1.0 + abs(self.fd_reference))

    def to_dict(self) -> dict[str, float | None]:
        return {
            "t1_qp_pp": self.t1_qp_pp,
            "t2_qq_pp": self.t2_qq_pp,
            "t3_qq_pq": self.t3_qq_pq,
            "total": self.total,
            "commutator": self.commutator,
            "fd_reference": self.fd_reference,
        }


def _check_inputs(state: ManyBodyState, orbitals: OrbitalSet, model: LatticeModel) -> None:
    if state.M != model.M or orbitals.M != model.M:
        raise ValidationError(
            f"state (M={state.M}), orbitals (M={orbitals.M}) and model (M={model.M}) disagree"
        )
    if state.N != orbitals.N:
        raise ValidationError(f"state has N={state.N}, orbitals have N={orbitals.N}")


def _mean_field(
    orbitals: OrbitalSet, model: LatticeModel, mean_field: bool
) -> NDArray[np.float64]:
    if mean_field:
        return mean_field_potential(orbitals, model)
    return np.zeros(model.M)


def three_term_operators(
    orbitals: OrbitalSet,
    model: LatticeModel,
    f: WeightFunction,
    mean_field: bool = True,
) -> tuple[TensorOperator, TensorOperator, TensorOperator]:
    """The operators whose imaginary parts give t1, t2 and t3 (before the factors 2, 1, 2)."""
    N = orbitals.N
    V = _mean_field(orbitals, model, mean_field)
    v12 = pair_multiplication(model.scaled_kernel(N), 0, 1, N)
    V1 = one_body_operator(np.diag(V).astype(np.complex128), 0, N)
    p1, p2 = p_slot(orbitals, 0, N), p_slot(orbitals, 1, N)
    q1, q2 = q_slot(orbitals, 0, N), q_slot(orbitals, 1, N)

    f0 = f_hat_tensor(f, orbitals)
    step1 = (f0 - f_hat_tensor(f, orbitals, -1)).scaled(float(N))
    step2 = (f0 - f_hat_tensor(f, orbitals, -2)).scaled(float(N))

    first = step1 @ q1 @ ((p2 @ v12 @ p2).scaled(N - 1.0) - V1) @ p1
    second = step2 @ q1 @ q2 @ v12.scaled(N - 1.0) @ p1 @ p2
    third = step1 @ q1 @ q2 @ v12.scaled(N - 1.0) @ p1 @ q2
    return first, second, third


def commutator_form(
    state: ManyBodyState,
    orbitals: OrbitalSet,
    model: LatticeModel,
    weight: WeightFunction | None = None,
    mean_field: bool = True,
) -> float:
    """(i/2) <psi, [W12, f_hat] psi> / epsilon, W12 = N(N-1) v12 - N V1 - N V2."""
    _check_inputs(state, orbitals, model)
    tensor = tensor_representation(state)
    return _commutator_value(tensor, orbitals, model, weight or weight_n(state.N), mean_field)


def _commutator_value(
    tensor: TensorState,
    orbitals: OrbitalSet,
    model: LatticeModel,
    f: WeightFunction,
    mean_field: bool,
) -> float:
    N = tensor.N
    V = np.diag(_mean_field(orbitals, model, mean_field)).astype(np.complex128)
    W = (
        pair_multiplication(model.scaled_kernel(N), 0, 1, N).scaled(float(N * (N - 1)))
        - one_body_operator(V, 0, N).scaled(float(N))
        - one_body_operator(V, 1, N).scaled(float(N))
    )
    F = f_hat_tensor(f, orbitals)
    value = 0.5j * ((W @ F).expectation(tensor) - (F @ W).expectation(tensor))
    return float(value.real) / model.epsilon


def finite_difference_alpha(
    state: ManyBodyState,
    orbitals: OrbitalSet,
    model: LatticeModel,
    f: WeightFunction,
    dt: float = DEFAULT_FD_STEP,
    mean_field: bool = True,
) -> float:
    """Centered difference of alpha_f along exact psi and the RK4 orbital flow."""
    H = schrodinger_generator(model, state.sector)
    flow_model = model if mean_field else model.free()
    values = []
    for h in (dt, -dt):
        psi = evolve_exact(state, H, h)
        phi = rk4_step(orbitals, flow_model, h)
        values.append(alpha_f(psi, phi, f))
    return (values[0] - values[1]) / (2.0 * dt)


def derivative_three_terms(
    state: ManyBodyState,
    orbitals: OrbitalSet,
    model: LatticeModel,
    weight: WeightFunction | None = None,
    mean_field: bool = True,
    fd_dt: float | None = DEFAULT_FD_STEP,
) -> DerivativeDecomposition:
    """Three-term decomposition of d/dt alpha_f at the current instant.

    t1 = 2 Im <psi, N(f - f_-1) q1 ((N-1) p2 v12 p2 - V1) p1 psi>
    t2 =   Im <psi, N(f - f_-2) q1 q2 (N-1) v12 p1 p2 psi>
    t3 = 2 Im <psi, N(f - f_-1) q1 q2 (N-1) v12 p1 q2 psi>

    ``weight`` defaults to n. With ``fd_dt`` set, the finite-difference
    reference along the coupled flows is attached; ``fd_dt=None`` skips it.

    Raises:
        SizeLimitError: If M**N exceeds the tensor cap.
        ValidationError: If state, orbitals and model disagree on M or N.
    """
    _check_inputs(state, orbitals, model)
    f = weight or weight_n(state.N)
    tensor = tensor_representation(state)
    first, second, third = three_term_operators(orbitals, model, f, mean_field)
    scale = 1.0 / model.epsilon
    t1 = 2.0 * first.expectation(tensor).imag * scale
    t2 = second.expectation(tensor).imag * scale
    t3 = 2.0 * third.expectation(tensor).imag * scale
    fd = (
        finite_difference_alpha(state, orbitals, model, f, fd_dt, mean_field)
        if fd_dt is not None
        else None
    )
    return DerivativeDecomposition(
        t1_qp_pp=float(t1),
        t2_qq_pp=float(t2),
        t3_qq_pq=float(t3),
        commutator=_commutator_value(tensor, orbitals, model, f, mean_field),
        fd_reference=fd,
    )
