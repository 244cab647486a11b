"""Bounds on the three derivative terms with the weight m(gamma).

Every term is linear in the kernel, so a sign-changing v is split into
v_plus - v_minus and each part is checked on its own. The bounds are stated
for the operator expressions without the 1/epsilon time-scale factor.
"""

from collections.abc import Iterable

import numpy as np

from meanfield_lab.counting.tensor_oracle import f_hat_tensor
from meanfield_lab.counting.weights import weight_m
from meanfield_lab.errors import ValidationError
from meanfield_lab.estimates.assumptions import KernelSums, omega_mask
from meanfield_lab.estimates.derivative import three_term_operators
from meanfield_lab.estimates.diagonalize import split_kernel
from meanfield_lab.estimates.margins import MarginReport
from meanfield_lab.fock.states import ManyBodyState
from meanfield_lab.fock.tensor import TensorState, tensor_representation
from meanfield_lab.meanfield.model import LatticeModel
from meanfield_lab.meanfield.orbitals import OrbitalSet

SQRT2 = float(np.sqrt(2.0))
SQRT12 = float(np.sqrt(12.0))


def _as_tensor(state: ManyBodyState | TensorState) -> TensorState:
    return state if isinstance(state, TensorState) else tensor_representation(state)


def term_bounds(sums: KernelSums, N: int, gamma: float, alpha: float) -> dict[str, float]:
    """Right sides of the term bounds for a non-negative kernel.

    ``qp-pp omega`` needs the direct mean field; the others hold for V = v * rho
    and for V = 0 alike.
    """
    tail = alpha + N ** (-gamma)
    bounds = {
        "qp-pp omega": 4.0 * np.sqrt(sums.sup_omega_sq) * np.sqrt(N) * tail
        + 4.0 * SQRT2 * sums.sup_outside * N ** (0.5 + 0.5 * gamma) * tail,
        "qp-pp sup": 4.0 * SQRT2 * sums.sup_conv * N ** (0.5 - 0.5 * gamma),
        "qq-pp": SQRT12
        * np.sqrt(sums.sup_conv**2 * alpha**2 + sums.int_sq * alpha * N ** (-gamma)),
        "qq-pp int": SQRT12 * np.sqrt(sums.int_sq) * tail,
        "qq-pq": 4.0 * np.sqrt(sums.sup_sq_conv) * N ** (0.5 * gamma) * alpha,
    }
    return {key: float(value) for key, value in bounds.items()}


def term_bound_check(
    state: ManyBodyState | TensorState,
    orbitals: OrbitalSet,
    model: LatticeModel,
    gamma: float,
    omega: Iterable[int] | None = None,
    mean_field: bool = True,
) -> MarginReport:
    """Compare |t1|, |t2|, |t3| (weight m(gamma)) with their bounds, per kernel sign.

    With ``mean_field=False`` (V = 0) the omega form of the qp-pp bound does not
    apply and is skipped.

    Raises:
        SizeLimitError: If M**N exceeds the tensor cap.
        ValidationError: If state, orbitals and model disagree on M or N.
    """
    tensor = _as_tensor(state)
    if tensor.M != model.M or orbitals.M != model.M or tensor.N != orbitals.N:
        raise ValidationError("state, orbitals and model must share M and N")
    N = tensor.N
    m = weight_m(N, gamma)
    alpha = float(f_hat_tensor(m, orbitals).expectation(tensor).real)
    rho = orbitals.density()
    mask = omega_mask(model.M, omega)

    report = MarginReport(f"term bounds gamma={gamma:g}", details={"alpha_m": alpha})
    for label, part in zip(("v+", "v-"), split_kernel(model.v), strict=True):
        part_model = model.with_kernel(part)
        first, second, third = three_term_operators(orbitals, part_model, m, mean_field)
        t1 = abs(2.0 * first.expectation(tensor).imag)
        t2 = abs(second.expectation(tensor).imag)
        t3 = abs(2.0 * third.expectation(tensor).imag)
        sums = KernelSums.compute(part_model.scaled_kernel(N), rho, mask)
        bounds = term_bounds(sums, N, gamma, alpha)
        if mean_field:
            report.add(f"{label} qp-pp omega", t1, bounds["qp-pp omega"])
        report.add(f"{label} qp-pp sup", t1, bounds["qp-pp sup"])
        report.add(f"{label} qq-pp", t2, bounds["qq-pp"])
        report.add(f"{label} qq-pp int", t2, bounds["qq-pp int"])
        report.add(f"{label} qq-pq", t3, bounds["qq-pq"])
    return report


def free_limit_budget_rate(
    orbitals: OrbitalSet, model: LatticeModel, gamma: float, alpha: float
) -> float:
    """B = sum over v_plus, v_minus of the V = 0 bounds: qp-pp sup + qq-pp int + qq-pq."""
    N = orbitals.N
    rho = orbitals.density()
    mask = omega_mask(model.M, None)
    rate = 0.0
    for part in split_kernel(model.v):
        sums = KernelSums.compute(model.with_kernel(part).scaled_kernel(N), rho, mask)
        bounds = term_bounds(sums, N, gamma, alpha)
        rate += bounds["qp-pp sup"] + bounds["qq-pp int"] + bounds["qq-pq"]
    return rate / model.epsilon
