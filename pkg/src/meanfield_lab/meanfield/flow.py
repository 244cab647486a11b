"""Fermionic Hartree and Hartree-Fock flows with their energy functionals."""

from dataclasses import dataclass, field

import logfire
import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError, IntegrationQualityError
from meanfield_lab.meanfield.model import LatticeModel, periodic_convolution
from meanfield_lab.meanfield.orbitals import OrbitalSet

GRAM_DRIFT_TOL = 1e-6
# drift at which a warning is logged but the run continues
GRAM_DRIFT_WARN = 1e-8


def mean_field_potential(orbitals: OrbitalSet, model: LatticeModel) -> NDArray[np.float64]:
    """N^-beta (v * rho) on the lattice."""
    return periodic_convolution(model.scaled_kernel(orbitals.N), orbitals.density())


def exchange_matrix(orbitals: OrbitalSet, model: LatticeModel) -> NDArray[np.complex128]:
    """K[x, y] = N^-beta v(x - y) sum_l phi_l(x) conj(phi_l(y))."""
    scale = float(orbitals.N) ** (-model.beta)
    return scale * model.interaction_matrix() * orbitals.projector()


def fock_matrix(
    orbitals: OrbitalSet, model: LatticeModel, exchange: bool = False
) -> NDArray[np.complex128]:
    """h0 + diag(v * rho) minus the exchange operator when requested."""
    F = model.one_body_matrix() + np.diag(mean_field_potential(orbitals, model))
    if exchange:
        F = F - exchange_matrix(orbitals, model)
    return F


def hartree_rhs(
    orbitals: OrbitalSet, model: LatticeModel, exchange: bool = False
) -> NDArray[np.complex128]:
    """d/dt of the coefficient matrix: -i F phi / epsilon."""
    return -1j * (fock_matrix(orbitals, model, exchange) @ orbitals.coefficients) / model.epsilon


def direct_energy(orbitals: OrbitalSet, model: LatticeModel) -> float:
    """1/2 <rho, N^-beta v * rho>."""
    return 0.5 * float(orbitals.density() @ mean_field_potential(orbitals, model))


def exchange_energy(orbitals: OrbitalSet, model: LatticeModel) -> float:
    """1/2 N^-beta sum_{j,k} sum_{x,y} conj(phi_j(x)) phi_k(x) v(x-y) conj(phi_k(y)) phi_j(y)."""
    scale = float(orbitals.N) ** (-model.beta)
    P = orbitals.projector()
    return 0.5 * scale * float(np.sum(model.interaction_matrix() * np.abs(P) ** 2))


def hartree_energy(orbitals: OrbitalSet, model: LatticeModel, exchange: bool = False) -> float:
    """One-body part plus direct term, minus the exchange term for Hartree-Fock.

    The functional matching each flow is conserved by it.
    """
    one_body = float(np.real(np.trace(model.one_body_matrix() @ orbitals.projector())))
    energy = one_body + direct_energy(orbitals, model)
    if exchange:
        energy -= exchange_energy(orbitals, model)
    return energy


@dataclass
class Trajectory:
    """Recorded orbital states of one integration."""

    times: list[float] = field(default_factory=list)
    states: list[OrbitalSet] = field(default_factory=list)
    gram_drift: list[float] = field(default_factory=list)
    energies: list[float] = field(default_factory=list)

    @property
    def final(self) -> OrbitalSet:
        return self.states[-1]

    @property
    def max_gram_drift(self) -> float:
        return max(self.gram_drift, default=0.0)

    @property
    def energy_drift(self) -> float:
        """Largest relative deviation of the energy from its initial value."""
        if not self.energies:
            return 0.0
        e0 = self.energies[0]
        scale = abs(e0) if e0 != 0.0 else 1.0
        return max(abs(e - e0) for e in self.energies) / scale

    def at_time(self, t: float, tol: float = 1e-9) -> OrbitalSet:
        """Recorded state at time t."""
        for time, state in zip(self.times, self.states, strict=True):
            if abs(time - t) <= tol:
                return state
        raise DomainError(f"time {t} was not recorded")


def rk4_step(
    orbitals: OrbitalSet, model: LatticeModel, dt: float, exchange: bool = False
) -> OrbitalSet:
    """One classical Runge-Kutta step of the orbital flow."""
    t = orbitals.t
    c = orbitals.coefficients

    def rhs(coefficients: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return hartree_rhs(OrbitalSet(coefficients, t), model, exchange)

    k1 = rhs(c)
    k2 = rhs(c + 0.5 * dt * k1)
    k3 = rhs(c + 0.5 * dt * k2)
    k4 = rhs(c + dt * k3)
    return OrbitalSet(c + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4), t + dt)


def step_count(t_final: float, dt: float) -> int:
    """Number of uniform steps covering [0, t_final] with step at most dt."""
    if dt <= 0:
        raise DomainError(f"dt must be positive, got {dt}")
    if t_final < 0:
        raise DomainError(f"t_final must be non-negative, got {t_final}")
    return int(np.ceil(t_final / dt - 1e-9))


def integrate_orbitals(
    orbitals: OrbitalSet,
    model: LatticeModel,
    t_final: float,
    dt: float,
    exchange: bool = False,
    record_every: int = 1,
    gram_tolerance: float = GRAM_DRIFT_TOL,
) -> Trajectory:
    """Integrate the orbital flow with RK4 on a uniform grid.

    Steps are uniform with size ``t_final / ceil(t_final / dt)``. No
    re-orthonormalization is applied; Gram and energy drift are recorded.

    Raises:
        DomainError: If dt <= 0 or t_final < 0.
        IntegrationQualityError: If the Gram drift exceeds ``gram_tolerance``.
    """
    steps = step_count(t_final, dt)
    h = t_final / steps if steps else 0.0
    t0 = orbitals.t
    trajectory = Trajectory()

    def record(state: OrbitalSet, drift: float) -> None:
        trajectory.times.append(state.t)
        trajectory.states.append(state)
        trajectory.gram_drift.append(drift)
        trajectory.energies.append(hartree_energy(state, model, exchange))

    state = orbitals
    record(state, state.gram_deviation())
    warned = False
    for n in range(1, steps + 1):
        state = rk4_step(state, model, h, exchange)
        # pin the clock to the grid so sample times compare exactly
        state = OrbitalSet(state.coefficients, t0 + n * h)
        drift = state.gram_deviation()
        if drift > gram_tolerance:
            logfire.error("Orbital integration drifted", drift=drift, dt=h, t=state.t)
            raise IntegrationQualityError(drift, gram_tolerance, h)
        if drift > GRAM_DRIFT_WARN and not warned:
            logfire.warn("Gram drift above warning level", drift=drift, dt=h, t=state.t)
            warned = True
        if n % record_every == 0 or n == steps:
            record(state, drift)
    return trajectory
