"""First-quantized tensor representation for tiny systems.

A ``TensorState`` stores the N-particle wave function as an array of shape
``(M,) * N``. Antisymmetric tensors correspond one-to-one to sector states:

    T[i_s(1), ..., i_s(N)] = sgn(s) * a_b / sqrt(N!)

for the bitstring ``b`` with occupied modes ``i_1 < ... < i_N`` and every
permutation ``s``. Operators acting on individual particle slots are built as
``TensorOperator`` objects and compose with ``@``.
"""

from collections.abc import Callable
from dataclasses import dataclass
from functools import cache
from itertools import permutations
from math import factorial, sqrt

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError, SizeLimitError, ValidationError
from meanfield_lab.fock.sector import build_sector
from meanfield_lab.fock.states import ManyBodyState

TENSOR_CAP = 4096
TENSOR_MATRIX_CAP = 1024

TensorArray = NDArray[np.complex128]


def check_tensor_size(M: int, N: int, cap: int = TENSOR_CAP) -> None:
    """Raise SizeLimitError if M**N exceeds the cap."""
    if M < 1 or N < 1:
        raise DomainError(f"need M >= 1 and N >= 1, got M={M}, N={N}")
    size = M**N
    if size > cap:
        raise SizeLimitError("tensor space", size, cap)


@cache
def _signed_permutations(N: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for perm in permutations(range(N)):
        inversions = sum(1 for i in range(N) for j in range(i + 1, N) if perm[i] > perm[j])
        out.append((perm, -1 if inversions % 2 else 1))
    return tuple(out)


@dataclass(frozen=True)
class TensorState:
    """N-fold tensor amplitudes of shape ``(M,) * N``."""

    M: int
    N: int
    amplitudes: TensorArray

    def __post_init__(self) -> None:
        check_tensor_size(self.M, self.N)
        if self.amplitudes.shape != (self.M,) * self.N:
            raise ValidationError(
                f"tensor has shape {self.amplitudes.shape}, expected {(self.M,) * self.N}"
            )

    @property
    def vector(self) -> NDArray[np.complex128]:
        return self.amplitudes.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def antisymmetry_defect(self) -> float:
        """Largest deviation from T -> -T under a swap of two slots."""
        worst = 0.0
        for i in range(self.N):
            for j in range(i + 1, self.N):
                swapped = np.swapaxes(self.amplitudes, i, j)
                worst = max(worst, float(np.max(np.abs(self.amplitudes + swapped))))
        return worst


def _flat_indices(occupied: NDArray[np.int64], perm: tuple[int, ...], M: int) -> NDArray[np.int64]:
    N = occupied.shape[1]
    strides = M ** np.arange(N - 1, -1, -1, dtype=np.int64)
    return occupied[:, list(perm)] @ strides


def tensor_representation(state: ManyBodyState) -> TensorState:
    """First-quantized antisymmetric tensor of a sector state.

    Raises:
        SizeLimitError: If M**N exceeds the tensor cap.
    """
    M, N = state.M, state.N
    check_tensor_size(M, N)
    occupied = state.sector.occupied_modes()
    flat = np.zeros(M**N, dtype=np.complex128)
    norm = 1.0 / sqrt(factorial(N))
    for perm, sign in _signed_permutations(N):
        flat[_flat_indices(occupied, perm, M)] = sign * norm * state.amplitudes
    return TensorState(M, N, flat.reshape((M,) * N))


def from_tensor(tensor: TensorState) -> ManyBodyState:
    """Inverse of ``tensor_representation`` on antisymmetric tensors."""
    sector = build_sector(tensor.M, tensor.N)
    occupied = sector.occupied_modes()
    identity = tuple(range(tensor.N))
    flat = _flat_indices(occupied, identity, tensor.M)
    amplitudes = sqrt(factorial(tensor.N)) * tensor.vector[flat]
    return ManyBodyState(sector, amplitudes)


def antisymmetrize(amplitudes: TensorArray) -> TensorArray:
    """(1/N!) sum_s sgn(s) T permuted by s."""
    N = amplitudes.ndim
    out = np.zeros_like(amplitudes, dtype=np.complex128)
    for perm, sign in _signed_permutations(N):
        out += sign * np.transpose(amplitudes, perm)
    return out / factorial(N)


def product_tensor(columns: NDArray[np.complex128]) -> TensorArray:
    """phi_1 (x) phi_2 (x) ... (x) phi_N for the columns of an M x N matrix."""
    M, N = columns.shape
    check_tensor_size(M, N)
    out = columns[:, 0]
    for j in range(1, N):
        out = np.multiply.outer(out, columns[:, j])
    return np.asarray(out, dtype=np.complex128).reshape((M,) * N)


def slater_tensor(columns: NDArray[np.complex128]) -> TensorState:
    """Normalized antisymmetrized product of orthonormal columns."""
    M, N = columns.shape
    amplitudes = sqrt(factorial(N)) * antisymmetrize(product_tensor(columns))
    return TensorState(M, N, amplitudes)


def random_antisymmetric(M: int, N: int, rng: np.random.Generator) -> TensorState:
    """Random normalized antisymmetric tensor."""
    check_tensor_size(M, N)
    shape = (M,) * N
    raw = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    anti = antisymmetrize(raw)
    norm = float(np.linalg.norm(anti))
    if norm == 0.0:
        raise ValidationError("antisymmetrized tensor vanished", suggestion="need N <= M")
    return TensorState(M, N, anti / norm)


# --- slot operators ------------------------------------------------------------


@dataclass(frozen=True)
class TensorOperator:
    """Linear map on ``(M,) * N`` tensors given by its action."""

    M: int
    N: int
    action: Callable[[TensorArray], TensorArray]

    def __call__(self, amplitudes: TensorArray) -> TensorArray:
        return self.action(amplitudes)

    def __matmul__(self, other: "TensorOperator") -> "TensorOperator":
        """Composition: ``(A @ B)(T) = A(B(T))``."""
        self._check_compatible(other)
        first, second = other.action, self.action
        return TensorOperator(self.M, self.N, lambda T: second(first(T)))

    def __add__(self, other: "TensorOperator") -> "TensorOperator":
        self._check_compatible(other)
        a, b = self.action, other.action
        return TensorOperator(self.M, self.N, lambda T: a(T) + b(T))

    def __sub__(self, other: "TensorOperator") -> "TensorOperator":
        return self + other.scaled(-1.0)

    def scaled(self, factor: complex) -> "TensorOperator":
        a = self.action
        return TensorOperator(self.M, self.N, lambda T: factor * a(T))

    def adjoint(self) -> "TensorOperator":
        """Adjoint via the dense matrix; small spaces only."""
        matrix = self.to_matrix().conj().T
        return dense_operator(matrix, self.M, self.N)

    def apply(self, state: TensorState) -> TensorArray:
        return self.action(state.amplitudes)

    def inner(self, left: TensorState, right: TensorState) -> complex:
        """<left| A |right>."""
        return complex(np.vdot(left.vector, self.apply(right).reshape(-1)))

    def expectation(self, state: TensorState) -> complex:
        return self.inner(state, state)

    def to_matrix(self, cap: int = TENSOR_MATRIX_CAP) -> NDArray[np.complex128]:
        """Dense matrix in the flattened row-major basis.

        Raises:
            SizeLimitError: If M**N exceeds ``cap``.
        """
        dim = self.M**self.N
        if dim > cap:
            raise SizeLimitError("dense tensor operator", dim, cap)
        shape = (self.M,) * self.N
        out = np.empty((dim, dim), dtype=np.complex128)
        basis = np.zeros(dim, dtype=np.complex128)
        for col in range(dim):
            basis[col] = 1.0
            out[:, col] = self.action(basis.reshape(shape)).reshape(-1)
            basis[col] = 0.0
        return out

    def _check_compatible(self, other: "TensorOperator") -> None:
        if (self.M, self.N) != (other.M, other.N):
            raise ValidationError(
                f"operators act on different spaces: {(self.M, self.N)} vs {(other.M, other.N)}"
            )


def identity_operator(M: int, N: int) -> TensorOperator:
    check_tensor_size(M, N)
    return TensorOperator(M, N, lambda T: T.astype(np.complex128, copy=True))


def dense_operator(matrix: NDArray[np.complex128], M: int, N: int) -> TensorOperator:
    """Wrap a dense (M**N x M**N) matrix."""
    check_tensor_size(M, N)
    shape = (M,) * N
    return TensorOperator(M, N, lambda T: (matrix @ T.reshape(-1)).reshape(shape))


def one_body_operator(A: NDArray[np.complex128], slot: int, N: int) -> TensorOperator:
    """A acting on particle ``slot`` (0-based), identity elsewhere."""
    M = A.shape[0]
    check_tensor_size(M, N)
    if not 0 <= slot < N:
        raise DomainError(f"slot {slot} out of range for N={N}")

    def action(T: TensorArray) -> TensorArray:
        return np.moveaxis(np.tensordot(A, T, axes=([1], [slot])), 0, slot)

    return TensorOperator(M, N, action)


def pair_multiplication(kernel: NDArray[np.float64], i: int, j: int, N: int) -> TensorOperator:
    """Multiplication by kernel[(x_i - x_j) mod M] on slots i != j."""
    M = kernel.shape[0]
    check_tensor_size(M, N)
    if i == j or not (0 <= i < N and 0 <= j < N):
        raise DomainError(f"need two distinct slots below N={N}, got {i}, {j}")
    x = np.arange(M)
    table = kernel[(x[:, None] - x[None, :]) % M]
    shape = [1] * N
    shape[i], shape[j] = M, M
    values = (table if i < j else table.T).reshape(shape)

    return TensorOperator(M, N, lambda T: values * T)


def pair_operator(h: NDArray[np.complex128], i: int, j: int, N: int) -> TensorOperator:
    """General two-body (M^2 x M^2) matrix acting on slots i and j."""
    M = int(round(sqrt(h.shape[0])))
    check_tensor_size(M, N)
    if h.shape != (M * M, M * M):
        raise ValidationError(f"two-body matrix must be square of size M^2, got {h.shape}")
    if i == j or not (0 <= i < N and 0 <= j < N):
        raise DomainError(f"need two distinct slots below N={N}, got {i}, {j}")
    h4 = h.reshape(M, M, M, M)

    def action(T: TensorArray) -> TensorArray:
        out = np.tensordot(h4, T, axes=([2, 3], [i, j]))
        return np.moveaxis(out, [0, 1], [i, j])

    return TensorOperator(M, N, action)
