"""Weight functions f: {0..N} -> [0, 1] with f(0) = 0 and f(N) = 1."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError, ValidationError

WEIGHT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WeightFunction:
    """Tabulated weight f(0), ..., f(N); zero outside that range."""

    N: int
    values: NDArray[np.float64]
    name: str = "custom"

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if self.N < 1:
            raise DomainError(f"N must be positive, got {self.N}")
        if values.shape != (self.N + 1,):
            raise ValidationError(f"weight needs N + 1 = {self.N + 1} values, got {values.shape}")
        if abs(values[0]) > WEIGHT_TOL or abs(values[-1] - 1.0) > WEIGHT_TOL:
            raise ValidationError("weight must satisfy f(0) = 0 and f(N) = 1")
        if np.any(values < -WEIGHT_TOL) or np.any(values > 1.0 + WEIGHT_TOL):
            raise ValidationError("weight values must lie in [0, 1]")
        object.__setattr__(self, "values", values)

    def __call__(self, k: int) -> float:
        if k < 0 or k > self.N:
            return 0.0
        return float(self.values[k])

    def shifted(self, d: int) -> NDArray[np.float64]:
        """[f(k + d) for k in 0..N], with f = 0 off the range."""
        return np.array([self(k + d) for k in range(self.N + 1)])

    def power(self, s: float) -> "WeightFunction":
        return WeightFunction(self.N, self.values**s, name=f"{self.name}^{s:g}")

    def is_monotone(self) -> bool:
        return bool(np.all(np.diff(self.values) >= -WEIGHT_TOL))

    def dominates(self, other: "WeightFunction") -> bool:
        """f >= other pointwise."""
        return bool(np.all(self.values >= other.values - WEIGHT_TOL))


def weight_n(N: int) -> WeightFunction:
    """n(k) = k / N."""
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    return WeightFunction(N, np.arange(N + 1) / N, name="n")


def weight_m(N: int, gamma: float) -> WeightFunction:
    """m(k) = k / N**gamma for k <= N**gamma, else 1.

    Raises:
        DomainError: If gamma is not in (0, 1].
    """
    if not 0.0 < gamma <= 1.0:
        raise DomainError(f"gamma must lie in (0, 1], got {gamma}")
    if N < 1:
        raise DomainError(f"N must be positive, got {N}")
    threshold = float(N) ** gamma
    k = np.arange(N + 1, dtype=np.float64)
    values = np.where(k <= threshold, k / threshold, 1.0)
    return WeightFunction(N, values, name=f"m({gamma:g})")


def weight_from_name(N: int, name: str, gamma: float | None = None) -> WeightFunction:
    """``n`` or ``m`` (the latter needs gamma)."""
    if name == "n":
        return weight_n(N)
    if name == "m":
        if gamma is None:
            raise DomainError("weight m needs gamma")
        return weight_m(N, gamma)
    raise DomainError(f"unknown weight {name!r}")
