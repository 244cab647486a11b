"""Gronwall envelopes for measured alpha series."""

from dataclasses import dataclass

import numpy as np
import scipy.integrate
from numpy.typing import NDArray

from meanfield_lab.errors import DomainError, ValidationError
from meanfield_lab.estimates.margins import MarginReport


@dataclass(frozen=True)
class GronwallEnvelope:
    """e^{int C} alpha0 + (e^{int C} - 1) N^-delta on a time grid."""

    times: NDArray[np.float64]
    rates: NDArray[np.float64]
    alpha0: float
    delta: float
    N: int

    @property
    def integrated_rate(self) -> NDArray[np.float64]:
        return scipy.integrate.cumulative_trapezoid(self.rates, self.times, initial=0.0)

    @property
    def epsilon(self) -> float:
        return float(self.N) ** (-self.delta)

    @property
    def values(self) -> NDArray[np.float64]:
        growth = np.exp(self.integrated_rate)
        return growth * self.alpha0 + (growth - 1.0) * self.epsilon

    def density_factor(self) -> NDArray[np.float64]:
        """C'(t) = sqrt(8) exp(int C / 2)."""
        return np.sqrt(8.0) * np.exp(0.5 * self.integrated_rate)

    def trace_envelope(self, trace0: float) -> NDArray[np.float64]:
        """Bound on the trace distance: C'(t) (trace0^(1/2) + N^(-1/2))."""
        return self.density_factor() * (np.sqrt(trace0) + self.N**-0.5)

    def hs_envelope(self, hs0: float) -> NDArray[np.float64]:
        """Bound on sqrt(N) HS: C'(t) ((sqrt(N) hs0)^(1/2) + N^(-1/2))."""
        return self.density_factor() * (np.sqrt(np.sqrt(self.N) * hs0) + self.N**-0.5)

    def weighted_trace_envelope(self) -> NDArray[np.float64]:
        """Trace-distance bound from an alpha_m envelope.

        sqrt(8) e^{int C / 2} alpha0^(1/2) + (8 (e^{int C} - 1))^(1/2) N^(-delta/2).
        """
        integral = self.integrated_rate
        return np.sqrt(8.0) * np.exp(0.5 * integral) * np.sqrt(self.alpha0) + np.sqrt(
            8.0 * np.expm1(integral)
        ) * self.N ** (-0.5 * self.delta)

    def domination(
        self, measured: NDArray[np.float64], name: str = "envelope"
    ) -> MarginReport:
        """Margins envelope(t) - measured(t), one per sample."""
        measured = np.asarray(measured, dtype=np.float64)
        if measured.shape != self.times.shape:
            raise ValidationError(
                f"measured series has shape {measured.shape}, grid has {self.times.shape}"
            )
        report = MarginReport(name)
        for t, value, bound in zip(self.times, measured, self.values, strict=True):
            report.add(f"t={t:.6g}", value, bound)
        return report


def gronwall_envelope(
    alpha0: float,
    C_samples: NDArray[np.float64],
    delta: float,
    N: int,
    t_grid: NDArray[np.float64],
) -> GronwallEnvelope:
    """Build the envelope with a trapezoidal integral of C over ``t_grid``.

    Raises:
        DomainError: If N <= 0 or delta < 0.
        ValidationError: If the samples and grid differ in length or the grid
            is not increasing.
    """
    if N <= 0:
        raise DomainError(f"N must be positive, got {N}")
    if delta < 0:
        raise DomainError(f"delta must be non-negative, got {delta}")
    times = np.asarray(t_grid, dtype=np.float64)
    rates = np.asarray(C_samples, dtype=np.float64)
    if times.shape != rates.shape or times.ndim != 1:
        raise ValidationError(
            f"rate samples {rates.shape} and time grid {times.shape} must be equal 1-D shapes"
        )
    if np.any(np.diff(times) < 0):
        raise ValidationError("time grid must be non-decreasing")
    return GronwallEnvelope(times=times, rates=rates, alpha0=float(alpha0), delta=delta, N=N)
