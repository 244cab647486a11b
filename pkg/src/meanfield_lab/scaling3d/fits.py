"""Least-squares power-law and exponential fits."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from meanfield_lab.errors import DomainError


@dataclass(frozen=True)
class PowerLawFit:
    """y ~ prefactor * x**exponent."""

    exponent: float
    prefactor: float
    residual: float

    def to_dict(self) -> dict[str, float]:
        return {"exponent": self.exponent, "prefactor": self.prefactor, "residual": self.residual}


def fit_exponent(xs: Sequence[float], ys: Sequence[float]) -> PowerLawFit:
    """Slope of log y against log x.

    Raises:
        DomainError: With fewer than two points or non-positive values.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.shape != y.shape or x.size < 2:
        raise DomainError("a power-law fit needs at least two matching points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("a power-law fit needs positive data")
    coeffs, residuals, *_ = np.polyfit(np.log(x), np.log(y), 1, full=True)
    residual = float(residuals[0]) if residuals.size else 0.0
    return PowerLawFit(
        exponent=float(coeffs[0]), prefactor=float(np.exp(coeffs[1])), residual=residual
    )


def fit_growth_rate(times: Sequence[float], values: Sequence[float]) -> float:
    """Rate r of y ~ y0 exp(r t) over the strictly positive samples; 0 if fewer than two."""
    t = np.asarray(times, dtype=np.float64)
    y = np.asarray(values, dtype=np.float64)
    keep = y > 0
    if np.count_nonzero(keep) < 2:
        return 0.0
    slope, _ = np.polyfit(t[keep], np.log(y[keep]), 1)
    return float(slope)
