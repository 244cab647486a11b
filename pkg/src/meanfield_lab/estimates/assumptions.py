"""Size conditions on the scaled interaction and the rates built from them."""

from collections.abc import Iterable
from dataclasses import asdict, dataclass

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError
from meanfield_lab.meanfield.model import LatticeModel, periodic_convolution, periodic_distance
from meanfield_lab.meanfield.orbitals import OrbitalSet


def omega_mask(M: int, omega: Iterable[int] | None) -> NDArray[np.bool_]:
    """Boolean mask over displacements 0..M-1; ``None`` is the empty set."""
    mask = np.zeros(M, dtype=bool)
    if omega is None:
        return mask
    for d in omega:
        mask[int(d) % M] = True
    return mask


def omega_ball(M: int, radius: int) -> list[int]:
    """Displacements within periodic distance ``radius`` of 0."""
    if radius < 0:
        raise DomainError(f"radius must be non-negative, got {radius}")
    return [int(d) for d in np.flatnonzero(periodic_distance(M) <= radius)]


@dataclass(frozen=True)
class KernelSums:
    """Lattice sums of a kernel against a density.

    ``sup_omega_sq`` is sup_x sum_{d in Omega} v(d)^2 rho(x + d) and
    ``sup_outside`` is sup_{d not in Omega} |v(d)| (0 when Omega is everything).
    """

    sup_conv: float
    sup_abs_conv: float
    sup_sq_conv: float
    int_sq: float
    sup_omega_sq: float
    sup_outside: float

    @classmethod
    def compute(
        cls, kernel: NDArray[np.float64], rho: NDArray[np.float64], mask: NDArray[np.bool_]
    ) -> "KernelSums":
        M = kernel.shape[0]
        sq_conv = periodic_convolution(kernel**2, rho)
        reflected = mask[(-np.arange(M)) % M]
        outside = np.abs(kernel[~mask])
        return cls(
            sup_conv=float(np.max(periodic_convolution(kernel, rho))),
            sup_abs_conv=float(np.max(periodic_convolution(np.abs(kernel), rho))),
            sup_sq_conv=float(np.max(sq_conv)),
            int_sq=float(sq_conv @ rho),
            sup_omega_sq=float(np.max(periodic_convolution(kernel**2 * reflected, rho))),
            sup_outside=float(np.max(outside, initial=0.0)),
        )


@dataclass(frozen=True)
class AssumptionQuantities:
    """D0..D4 and D for the scaled kernel at one instant."""

    t: float
    N: int
    gamma: float
    delta2: float
    delta3: float
    delta4: float
    D0: float
    D1: float
    D2: float
    D3: float
    D4: float
    D: float

    def to_dict(self) -> dict[str, float]:
        return {key: float(value) for key, value in asdict(self).items()}


def assumption_quantities(
    orbitals: OrbitalSet,
    model: LatticeModel,
    gamma: float,
    omega: Iterable[int] | None = None,
    delta2: float = 0.0,
    delta3: float = 0.0,
    delta4: float = 0.0,
) -> AssumptionQuantities:
    """Evaluate the size conditions for v^(N) = N^-beta v on the orbital density.

      D0 = sup(|v^(N)| * rho)
      D1 = N^gamma sup((v^(N))^2 * rho)
      D2 = N^-delta2 sum ((v^(N))^2 * rho) rho
      D3 = N^(1 + delta3) sup_x sum_{d in Omega} v^(N)(d)^2 rho(x + d)
      D4 = N^(1/2 + gamma/2 + delta4) sup_{d not in Omega} |v^(N)(d)|
      D  = N sup((v^(N))^2 * rho)

    ``omega`` is a set of displacements and is never chosen automatically.
    """
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must lie in (0, 1], got {gamma}")
    N = orbitals.N
    sums = KernelSums.compute(
        model.scaled_kernel(N), orbitals.density(), omega_mask(model.M, omega)
    )
    return AssumptionQuantities(
        t=orbitals.t,
        N=N,
        gamma=gamma,
        delta2=delta2,
        delta3=delta3,
        delta4=delta4,
        D0=sums.sup_abs_conv,
        D1=N**gamma * sums.sup_sq_conv,
        D2=N ** (-delta2) * sums.int_sq,
        D3=N ** (1.0 + delta3) * sums.sup_omega_sq,
        D4=N ** (0.5 + 0.5 * gamma + delta4) * sums.sup_outside,
        D=N * sums.sup_sq_conv,
    )


def basic_rate(quantities: AssumptionQuantities, epsilon: float = 1.0) -> float:
    """C = 24 sqrt(D) / epsilon for the alpha_n envelope."""
    return 24.0 * float(np.sqrt(quantities.D)) / epsilon


def general_rate(quantities: AssumptionQuantities, sign_changing: bool = False) -> float:
    """C = 12 max{4 sqrt(D3) N^(-d3/2), 4 sqrt(2) D4 N^-d4, sqrt(12) D0,
    sqrt(12) D2 / D0, 8 sqrt(D1)}, doubled for a kernel of both signs."""
    q = quantities
    N = float(q.N)
    candidates = [
        4.0 * np.sqrt(q.D3) * N ** (-0.5 * q.delta3),
        4.0 * np.sqrt(2.0) * q.D4 * N ** (-q.delta4),
        np.sqrt(12.0) * q.D0,
        np.sqrt(12.0) * q.D2 / q.D0 if q.D0 > 0 else 0.0,
        8.0 * np.sqrt(q.D1),
    ]
    rate = 12.0 * float(max(candidates))
    return 2.0 * rate if sign_changing else rate


def general_delta(gamma: float, delta2: float, delta3: float, delta4: float) -> float:
    """delta = min{gamma - d2, gamma + d3/2, gamma + d4}."""
    return min(gamma - delta2, gamma + 0.5 * delta3, gamma + delta4)


def free_limit_delta(gamma: float) -> float:
    """delta = min{gamma/2 - 1/6, 1/2 - gamma/2}, largest (1/6) at gamma = 2/3.

    Raises:
        DomainError: If gamma is outside (1/3, 1).
    """
    if not 1.0 / 3.0 < gamma < 1.0:
        raise DomainError(f"free-limit rate needs 1/3 < gamma < 1, got {gamma}")
    return min(0.5 * gamma - 1.0 / 6.0, 0.5 - 0.5 * gamma)
