"""Exception hierarchy for the lab.

Every error carries a human-readable message and, where one exists, a concrete
suggestion for the caller (for example which parameter to change).
"""

from dataclasses import dataclass
from typing import Any


@dataclass
class LabError(Exception):
    """Base class for all lab errors."""

    message: str
    suggestion: str | None = None
    details: dict[str, Any] | None = None

    def __post_init__(self) -> None:
        super().__init__(self.message)

    def __str__(self) -> str:
        if self.suggestion:
            return f"{self.message} ({self.suggestion})"
        return self.message

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "suggestion": self.suggestion,
            "details": self.details,
        }


class DomainError(LabError):
    """An argument lies outside the mathematical domain of an operation."""


class SizeLimitError(LabError):
    """A Fock sector or tensor space exceeds its configured cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(
            message=f"{what} of size {size} exceeds cap {cap}",
            suggestion="reduce N or M, or raise the cap explicitly",
            details={"what": what, "size": size, "cap": cap},
        )


class ValidationError(LabError):
    """Inputs violate an invariant (Hermiticity, orthonormality, matching spaces)."""


class IntegrationQualityError(LabError):
    """The orbital integrator drifted beyond its tolerance."""

    def __init__(self, drift: float, tolerance: float, dt: float) -> None:
        super().__init__(
            message=f"Gram drift {drift:.3e} exceeds tolerance {tolerance:.1e} at dt={dt:g}",
            suggestion="reduce dt",
            details={"drift": drift, "tolerance": tolerance, "dt": dt},
        )


class ConfigError(LabError):
    """Configuration file is missing, malformed, or fails validation."""

    def __init__(self, message: str, field: str | None = None) -> None:
        super().__init__(
            message=message if field is None else f"{field}: {message}",
            suggestion=None,
            details={"field": field} if field else None,
        )
        self.field = field
