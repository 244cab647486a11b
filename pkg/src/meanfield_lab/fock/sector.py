"""Fixed-particle-number sectors of the fermionic Fock space.

A basis state is an occupation bitstring over M modes with exactly N set bits.
Bit ``x`` set means mode ``x`` is occupied. The canonical order is ascending
integer value of the bitstring.

Sign convention: for occupied modes ``i_1 < i_2 < ... < i_N`` the basis state is
``c+_{i_1} c+_{i_2} ... c+_{i_N} |0>``, so creation operators act in descending
index order. Moving ``c+_x`` or ``c_x`` into place picks up ``(-1)`` to the number
of occupied modes below ``x``.
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError, SizeLimitError

DEFAULT_SECTOR_CAP = 20_000


@dataclass(frozen=True)
class SectorBasis:
    """Canonical N-particle sector over M modes."""

    M: int
    N: int
    states: NDArray[np.int64]
    index: dict[int, int] = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return int(self.states.shape[0])

    def occupations(self) -> NDArray[np.int8]:
        """Occupation table of shape (dimension, M)."""
        bits = (self.states[:, None] >> np.arange(self.M, dtype=np.int64)[None, :]) & 1
        return bits.astype(np.int8)

    def occupied_modes(self) -> NDArray[np.int64]:
        """Occupied mode indices in ascending order, shape (dimension, N)."""
        occ = self.occupations().astype(bool)
        cols = np.nonzero(occ)[1]
        return cols.reshape(self.dimension, self.N)

    def position(self, bitstring: int) -> int:
        """Position of a bitstring in the canonical order."""
        try:
            return self.index[bitstring]
        except KeyError as e:
            raise DomainError(
                f"bitstring {bitstring:#b} is not in the ({self.M}, {self.N}) sector"
            ) from e

    def positions(self, bitstrings: NDArray[np.int64]) -> NDArray[np.int64]:
        """Vectorized position lookup for bitstrings known to be in the sector."""
        return np.searchsorted(self.states, bitstrings).astype(np.int64)

    def same_space(self, other: "SectorBasis") -> bool:
        return self.M == other.M and self.N == other.N


def build_sector(M: int, N: int, cap: int = DEFAULT_SECTOR_CAP) -> SectorBasis:
    """Build the canonical (M, N) sector.

    Raises:
        DomainError: If N is not in 1..M.
        SizeLimitError: If binomial(M, N) exceeds ``cap``.
    """
    if M < 1 or N < 1 or N > M:
        raise DomainError(f"need 1 <= N <= M, got M={M}, N={N}")
    if M > 62:
        raise DomainError(f"M={M} does not fit a 64-bit occupation word")

    dimension = comb(M, N)
    if dimension > cap:
        raise SizeLimitError("sector", dimension, cap)

    states = np.array(
        sorted(sum(1 << x for x in modes) for modes in combinations(range(M), N)),
        dtype=np.int64,
    )
    index = {int(s): i for i, s in enumerate(states)}
    return SectorBasis(M=M, N=N, states=states, index=index)


def popcount_below(states: NDArray[np.int64], mode: int) -> NDArray[np.int64]:
    """Number of occupied modes strictly below ``mode`` for each state."""
    mask = np.int64((1 << mode) - 1)
    return np.bitwise_count(states & mask).astype(np.int64)
