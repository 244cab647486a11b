"""Closed-shell plane-wave Fermi balls in a periodic cube."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError
from meanfield_lab.estimates.margins import MarginReport

# (5/9) (2 pi)^(-2/3)
LIEB_THIRRING_CONSTANT = 5.0 / 9.0 * (2.0 * np.pi) ** (-2.0 / 3.0)
# rows of the pair matrix handled per block in the exchange sum
EXCHANGE_BLOCK = 256


@dataclass(frozen=True, eq=False)
class FermiBall:
    """All lattice momenta with |k|^2 up to a closed shell, in a box of side L."""

    momenta: NDArray[np.int64]
    L: float
    density: float

    @property
    def N(self) -> int:
        return int(self.momenta.shape[0])

    @property
    def volume(self) -> float:
        return self.L**3

    @property
    def fermi_shell(self) -> int:
        """Largest |k|^2 in the filling."""
        return int(np.max(np.sum(self.momenta**2, axis=1)))


@lru_cache(maxsize=16)
def _momenta_up_to(radius: int) -> NDArray[np.int64]:
    """Integer vectors with |k|^2 <= radius^2, sorted by |k|^2 (ties lexicographic)."""
    axis = np.arange(-radius, radius + 1)
    grid = np.stack(np.meshgrid(axis, axis, axis, indexing="ij"), axis=-1).reshape(-1, 3)
    norms = np.sum(grid**2, axis=1)
    inside = grid[norms <= radius**2]
    order = np.lexsort((inside[:, 2], inside[:, 1], inside[:, 0], np.sum(inside**2, axis=1)))
    return inside[order]


def shell_sizes(N_max: int) -> list[tuple[int, int]]:
    """(|k|^2, cumulative particle number) for every closed shell reaching N_max."""
    radius = int(np.ceil((3.0 * N_max / (4.0 * np.pi)) ** (1.0 / 3.0))) + 2
    momenta = _momenta_up_to(radius)
    norms = np.sum(momenta**2, axis=1)
    shells, counts = np.unique(norms, return_counts=True)
    cumulative = np.cumsum(counts)
    return [(int(s), int(n)) for s, n in zip(shells, cumulative, strict=True)]


def closed_shell_sizes(N_min: int, N_max: int) -> list[int]:
    """Closed-shell particle numbers in [N_min, N_max]."""
    return [n for _, n in shell_sizes(N_max) if N_min <= n <= N_max]


def fermi_ball(N_target: int, c: float = 1.0) -> FermiBall:
    """Smallest closed-shell filling with at least N_target particles at density c.

    Raises:
        DomainError: If N_target < 1 or c <= 0.
    """
    if N_target < 1:
        raise DomainError(f"N_target must be at least 1, got {N_target}")
    if c <= 0:
        raise DomainError(f"density must be positive, got {c}")
    shell = next(s for s, n in shell_sizes(N_target) if n >= N_target)
    radius = int(np.ceil(np.sqrt(shell)))
    momenta = _momenta_up_to(radius)
    momenta = momenta[np.sum(momenta**2, axis=1) <= shell]
    N = momenta.shape[0]
    return FermiBall(momenta=momenta, L=(N / c) ** (1.0 / 3.0), density=c)


def fermi_ball_kinetic(ball: FermiBall, L: float | None = None) -> float:
    """sum_j (2 pi k_j / L)^2, in the ball's own box unless L is given."""
    side = ball.L if L is None else L
    return float((2.0 * np.pi / side) ** 2 * np.sum(ball.momenta**2))


def lieb_thirring_margin(ball: FermiBall) -> MarginReport:
    """int rho^(5/3) = (N / L^3)^(5/3) L^3 against (5/9) (2 pi)^(-2/3) E_kin.

    Raises:
        DomainError: For N < 7; the k = 0 single wave has no kinetic energy in a box.
    """
    if ball.N < 7:
        raise DomainError(
            f"Lieb-Thirring check starts at the first non-trivial shell (N >= 7), got N={ball.N}"
        )
    report = MarginReport("lieb-thirring", details={"N": float(ball.N)})
    lhs = (ball.N / ball.volume) ** (5.0 / 3.0) * ball.volume
    report.add(f"N={ball.N}", lhs, LIEB_THIRRING_CONSTANT * fermi_ball_kinetic(ball))
    return report


def occupied_volume_check(
    ball: FermiBall, fractions: tuple[float, ...] = (0.25, 0.5, 0.75, 1.0)
) -> MarginReport:
    """int_Omega rho <= vol(Omega)^(2/5) (C_LT E_kin)^(3/5) on sub-cubes of the box.

    ``fractions`` are side lengths of Omega relative to L.
    """
    energy = LIEB_THIRRING_CONSTANT * fermi_ball_kinetic(ball)
    report = MarginReport("occupied volume", details={"N": float(ball.N)})
    for fraction in fractions:
        if not 0.0 < fraction <= 1.0:
            raise DomainError(f"sub-cube fraction must lie in (0, 1], got {fraction}")
        vol = (fraction * ball.L) ** 3
        report.add(f"side={fraction:g}L", ball.density * vol, vol**0.4 * energy**0.6)
    return report


def fermi_ball_exchange_sum(ball: FermiBall) -> float:
    """L^-1 sum_{i != j} |k_i - k_j|^-2."""
    k = ball.momenta.astype(np.float64)
    total = 0.0
    for start in range(0, ball.N, EXCHANGE_BLOCK):
        block = k[start : start + EXCHANGE_BLOCK]
        sq = np.sum((block[:, None, :] - k[None, :, :]) ** 2, axis=-1)
        np.reciprocal(sq, out=sq, where=sq > 0)
        total += float(np.sum(sq, where=sq > 0))
    return total / ball.L
