"""Hardy and Hardy-Littlewood-Sobolev spot checks on radial profiles in 3D."""

from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.special

from meanfield_lab.errors import DomainError
from meanfield_lab.estimates.margins import MarginReport

HARDY_CONSTANT = 4.0


@dataclass(frozen=True)
class RadialProfile:
    """f(|x|) with its radial derivative."""

    name: str
    f: Callable[[float], float]
    df: Callable[[float], float]

    def dilated(self, factor: float) -> "RadialProfile":
        """x -> f(factor x)."""
        f, df = self.f, self.df
        return RadialProfile(
            f"{self.name}({factor:g}x)",
            lambda r: f(factor * r),
            lambda r: factor * df(factor * r),
        )


def gaussian_profile(width: float = 1.0) -> RadialProfile:
    """exp(-r^2 / (2 width^2))."""
    if width <= 0:
        raise DomainError(f"width must be positive, got {width}")
    a2 = width * width
    return RadialProfile(
        f"gauss({width:g})",
        lambda r: float(np.exp(-r * r / (2.0 * a2))),
        lambda r: float(-r / a2 * np.exp(-r * r / (2.0 * a2))),
    )


def lorentzian_profile(power: float = 2.0) -> RadialProfile:
    """(1 + r^2)^-power; in H^1 of R^3 for power > 1/4."""
    if power <= 0.25:
        raise DomainError(f"power must exceed 1/4, got {power}")
    return RadialProfile(
        f"lorentz({power:g})",
        lambda r: float((1.0 + r * r) ** (-power)),
        lambda r: float(-2.0 * power * r * (1.0 + r * r) ** (-power - 1.0)),
    )


def _radial(integrand: Callable[[float], float]) -> float:
    value, _ = scipy.integrate.quad(integrand, 0.0, np.inf, limit=200)
    return 4.0 * np.pi * float(value)


def hardy_sides(profile: RadialProfile) -> tuple[float, float]:
    """(int |f|^2 / |x|^2, 4 int |grad f|^2)."""
    lhs = _radial(lambda r: profile.f(r) ** 2)
    rhs = HARDY_CONSTANT * _radial(lambda r: profile.df(r) ** 2 * r * r)
    return lhs, rhs


def hardy_spot_check(profiles: Sequence[RadialProfile]) -> MarginReport:
    """Hardy's inequality with constant 4 on each profile."""
    report = MarginReport("hardy")
    for profile in profiles:
        lhs, rhs = hardy_sides(profile)
        report.add(profile.name, lhs, rhs)
    return report


def hls_sharp_constant(lam: float) -> float:
    """Sharp HLS constant in 3D for p = r = 6 / (6 - lam).

    pi^(lam/2) Gamma(3/2 - lam/2) / Gamma(3 - lam/2) (Gamma(3/2) / Gamma(3))^(-1 + lam/3).
    """
    if not 0.0 < lam < 3.0:
        raise DomainError(f"lambda must lie in (0, 3), got {lam}")
    gamma = scipy.special.gamma
    return float(
        np.pi ** (0.5 * lam)
        * gamma(1.5 - 0.5 * lam)
        / gamma(3.0 - 0.5 * lam)
        * (gamma(1.5) / gamma(3.0)) ** (-1.0 + lam / 3.0)
    )


def gaussian_hls_sides(lam: float, a: float, b: float) -> tuple[float, float]:
    """Both sides of HLS for f = exp(-|x|^2 / 2a^2), h = exp(-|x|^2 / 2b^2).

    f * h is a Gaussian of variance a^2 + b^2 with prefactor (2 pi a^2 b^2 / (a^2 + b^2))^(3/2),
    so the double integral reduces to one radial quadrature.
    """
    if a <= 0 or b <= 0:
        raise DomainError(f"widths must be positive, got {a}, {b}")
    p = 6.0 / (6.0 - lam)
    var = a * a + b * b
    prefactor = (2.0 * np.pi * a * a * b * b / var) ** 1.5
    lhs = prefactor * _radial(lambda r: r ** (2.0 - lam) * np.exp(-r * r / (2.0 * var)))

    def lp_norm(width: float) -> float:
        return _radial(lambda r: np.exp(-p * r * r / (2.0 * width * width)) * r * r) ** (1.0 / p)

    rhs = hls_sharp_constant(lam) * lp_norm(a) * lp_norm(b)
    return float(lhs), float(rhs)


def hls_spot_check(
    s: float, profiles: Sequence[tuple[float, float]] = ((1.0, 1.0), (1.0, 2.0), (0.5, 3.0))
) -> MarginReport:
    """HLS with lambda = 2s on Gaussian pairs given by their widths (a, b).

    Raises:
        DomainError: If s is outside (0, 3/2).
    """
    if not 0.0 < s < 1.5:
        raise DomainError(f"s must lie in (0, 3/2), got {s}")
    lam = 2.0 * s
    report = MarginReport(f"hls lambda={lam:g}", details={"constant": hls_sharp_constant(lam)})
    for a, b in profiles:
        lhs, rhs = gaussian_hls_sides(lam, a, b)
        report.add(f"gauss({a:g}) x gauss({b:g})", lhs, rhs)
    return report
