"""Second-quantized operators on a fixed-N sector."""

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import ValidationError
from meanfield_lab.fock.sector import SectorBasis, popcount_below

if TYPE_CHECKING:
    from meanfield_lab.fock.states import ManyBodyState
    from meanfield_lab.meanfield.model import LatticeModel

HERMITIAN_TOL = 1e-12


def check_hermitian(A: NDArray[np.complex128], what: str = "matrix") -> None:
    """Raise ValidationError unless A is Hermitian relative to its largest entry."""
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"{what} must be square, got shape {A.shape}")
    scale = max(float(np.max(np.abs(A))), 1.0) if A.size else 1.0
    deviation = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    if deviation > HERMITIAN_TOL * scale:
        raise ValidationError(
            f"{what} is not Hermitian (max deviation {deviation:.2e})",
            suggestion="symmetrize the input as (A + A^H) / 2",
        )


@dataclass(frozen=True)
class HermitianOperator:
    """Dense Hermitian matrix, optionally tied to a sector."""

    matrix: NDArray[np.complex128]
    sector: SectorBasis | None = None

    def __post_init__(self) -> None:
        check_hermitian(self.matrix, "operator")
        if self.sector is not None and self.matrix.shape[0] != self.sector.dimension:
            raise ValidationError(
                f"operator dimension {self.matrix.shape[0]} does not match "
                f"sector dimension {self.sector.dimension}"
            )

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    def apply(self, vector: NDArray[np.complex128]) -> NDArray[np.complex128]:
        return self.matrix @ vector

    def expectation(self, state: "ManyBodyState") -> float:
        """<psi|A|psi> for a state on the same sector."""
        if self.sector is not None and not self.sector.same_space(state.sector):
            raise ValidationError("state and operator live on different sectors")
        psi = state.amplitudes
        return float(np.vdot(psi, self.matrix @ psi).real)

    def eigenvalues(self) -> NDArray[np.float64]:
        return np.linalg.eigvalsh(self.matrix)

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        return HermitianOperator(self.matrix + other.matrix, self.sector)

    def scaled(self, factor: float) -> "HermitianOperator":
        return HermitianOperator(factor * self.matrix, self.sector)


def _hopping_pairs(
    sector: SectorBasis, x: int, y: int
) -> tuple[NDArray[np.int64], NDArray[np.int64], NDArray[np.float64]]:
    """Source rows, target rows and signs of c+_x c_y on every sector state."""
    states = sector.states
    if x == y:
        src = np.nonzero((states >> y) & 1)[0]
        return src, src, np.ones(src.shape[0])

    mask = ((states >> y) & 1).astype(bool) & ~((states >> x) & 1).astype(bool)
    src = np.nonzero(mask)[0]
    before = states[src]
    middle = before ^ np.int64(1 << y)
    after = middle | np.int64(1 << x)
    parity = popcount_below(before, y) + popcount_below(middle, x)
    signs = 1.0 - 2.0 * (parity & 1)
    return src, sector.positions(after), signs


def lift_one_body(A: NDArray[np.complex128], sector: SectorBasis) -> HermitianOperator:
    """Second quantization of a one-body matrix: sum_{x,y} A_xy c+_x c_y.

    Raises:
        ValidationError: If A is not Hermitian or not M x M.
    """
    A = np.asarray(A, dtype=np.complex128)
    if A.shape != (sector.M, sector.M):
        raise ValidationError(f"one-body matrix must be {sector.M}x{sector.M}, got {A.shape}")
    check_hermitian(A, "one-body matrix")

    out = np.zeros((sector.dimension, sector.dimension), dtype=np.complex128)
    rows, cols = np.nonzero(np.abs(A) > 0)
    for x, y in zip(rows.tolist(), cols.tolist(), strict=True):
        src, dst, signs = _hopping_pairs(sector, x, y)
        np.add.at(out, (dst, src), A[x, y] * signs)
    return HermitianOperator(out, sector)


def one_body_correlations(state: "ManyBodyState") -> NDArray[np.complex128]:
    """Matrix G with G[x, y] = <psi| c+_x c_y |psi>."""
    sector = state.sector
    psi = state.amplitudes
    M = sector.M
    G = np.zeros((M, M), dtype=np.complex128)
    for x in range(M):
        for y in range(M):
            src, dst, signs = _hopping_pairs(sector, x, y)
            if src.size:
                G[x, y] = np.sum(np.conj(psi[dst]) * signs * psi[src])
    return G


def interaction_diagonal(v_scaled: NDArray[np.float64], sector: SectorBasis) -> NDArray[np.float64]:
    """Diagonal of sum_{i<j} v(x_i - x_j) on the occupation basis.

    ``v_scaled[d]`` is the kernel at periodic displacement d (already scaled).
    """
    M = sector.M
    disp = (np.arange(M)[:, None] - np.arange(M)[None, :]) % M
    V = v_scaled[disp]
    occ = sector.occupations().astype(np.float64)
    pair_sum = np.einsum("sx,xy,sy->s", occ, V, occ)
    self_term = occ @ np.diag(V)
    return 0.5 * (pair_sum - self_term)


def build_hamiltonian(model: "LatticeModel", sector: SectorBasis) -> HermitianOperator:
    """H = sum_j h0_j + N^-beta sum_{i<j} v(x_i - x_j) on the sector.

    Raises:
        ValidationError: If the model's M does not match the sector.
    """
    if model.M != sector.M:
        raise ValidationError(f"model has M={model.M}, sector has M={sector.M}")
    H = lift_one_body(model.one_body_matrix(), sector).matrix
    diagonal = interaction_diagonal(model.scaled_kernel(sector.N), sector)
    H[np.diag_indices_from(H)] += diagonal
    return HermitianOperator(H, sector)


def schrodinger_generator(model: "LatticeModel", sector: SectorBasis) -> HermitianOperator:
    """H / epsilon, the generator of i d/dt psi on the sector."""
    H = build_hamiltonian(model, sector)
    return H if model.epsilon == 1.0 else H.scaled(1.0 / model.epsilon)
