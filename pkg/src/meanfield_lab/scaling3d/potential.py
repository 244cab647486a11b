"""The box potential of |x|^-s at constant density and its scaling in N."""

from functools import lru_cache

import numpy as np
import scipy.integrate

from meanfield_lab.errors import DomainError
from meanfield_lab.estimates.margins import MarginReport
from meanfield_lab.scaling3d.fermi import FermiBall, fermi_ball_kinetic

QUAD_RTOL = 1e-6
# the Lieb-Thirring step needs 5s/2 < 3
S_MAX = 6.0 / 5.0


def _check_exponent(s: float) -> None:
    if not 0.0 < s < S_MAX:
        raise DomainError(f"exponent s must lie in (0, 6/5), got {s}")


@lru_cache(maxsize=64)
def unit_cube_integral(s: float) -> float:
    """int over [-1/2, 1/2]^3 of |x|^-s, by spherical quadrature over one octant.

    For each direction the radial integral runs to the cube face and is done in
    closed form: r_max^(3 - s) / (3 - s).
    """
    if not 0.0 <= s < 3.0:
        raise DomainError(f"cube integral needs 0 <= s < 3, got {s}")

    def integrand(theta: float, phi: float) -> float:
        sin_t = np.sin(theta)
        extent = max(abs(sin_t * np.cos(phi)), abs(sin_t * np.sin(phi)), abs(np.cos(theta)))
        r_max = 0.5 / extent
        return float(r_max ** (3.0 - s) / (3.0 - s) * sin_t)

    value, _ = scipy.integrate.dblquad(
        integrand, 0.0, np.pi / 2.0, 0.0, np.pi / 2.0, epsrel=QUAD_RTOL
    )
    return 8.0 * float(value)


def ball_integral(s: float, R: float, quadrature: bool = True) -> float:
    """int over the ball of radius R of |x|^-s: 4 pi R^(3-s) / (3-s).

    With ``quadrature`` the radial integral is evaluated numerically instead.
    """
    if not 0.0 <= s < 3.0:
        raise DomainError(f"ball integral needs 0 <= s < 3, got {s}")
    if not quadrature:
        return 4.0 * np.pi * R ** (3.0 - s) / (3.0 - s)
    value, _ = scipy.integrate.quad(lambda r: r ** (2.0 - s), 0.0, R, epsrel=QUAD_RTOL)
    return 4.0 * np.pi * float(value)


def _box_center(s: float, N: int, c: float) -> float:
    if N < 1 or c <= 0:
        raise DomainError(f"need N >= 1 and c > 0, got N={N}, c={c}")
    L = (N / c) ** (1.0 / 3.0)
    return c * L ** (3.0 - s) * unit_cube_integral(s)


def mean_field_sup(s: float, N: int, c: float = 1.0) -> float:
    """sup_y (|x|^-s * rho0)(y) for rho0 = c on a cube of volume N / c.

    The supremum sits at the cube center: c L^(3-s) I(s) = c^(s/3) N^(1-s/3) I(s).

    Raises:
        DomainError: If s is outside (0, 6/5).
    """
    _check_exponent(s)
    return _box_center(s, N, c)


def mean_field_constant(N: int, c: float = 1.0) -> float:
    """(1 * rho0)(y), the s -> 0 end of the family: the total mass N at every y."""
    return _box_center(0.0, N, c)


def mean_field_inf(s: float, N: int, c: float = 1.0) -> float:
    """(|x|^-s * rho0) at a cube corner, the smallest value inside the cube.

    The corner sees the cube [0, L]^3: c L^(3-s) 2^-s I(s).
    """
    _check_exponent(s)
    return 2.0 ** (-s) * _box_center(s, N, c)


def scaling_constant_bound(s: float, A: float) -> float:
    """C = (6/5 - s)^(s/2 - 1) s^(-5s/6) (6/5) 2^(2s/3) 3^-s 5^(s/6) A^(s/2).

    Bounds sup(|x|^-s * rho) N^-(1 - s/3) whenever E_kin <= A N.
    """
    _check_exponent(s)
    if A <= 0:
        raise DomainError(f"A must be positive, got {A}")
    return float(
        (S_MAX - s) ** (0.5 * s - 1.0)
        * s ** (-5.0 * s / 6.0)
        * S_MAX
        * 2.0 ** (2.0 * s / 3.0)
        * 3.0 ** (-s)
        * 5.0 ** (s / 6.0)
        * A ** (0.5 * s)
    )


def scaled_potential_check(ball: FermiBall, s: float) -> MarginReport:
    """Scaled sup against the explicit constant, and the scaled corner value against zero."""
    beta = 1.0 - s / 3.0
    scale = float(ball.N) ** (-beta)
    A = fermi_ball_kinetic(ball) / ball.N
    report = MarginReport(f"box potential s={s:g}", details={"N": float(ball.N), "A": A})
    report.add(
        f"N={ball.N} sup <= C(s, A)",
        scale * mean_field_sup(s, ball.N, ball.density),
        scaling_constant_bound(s, A),
    )
    report.add(f"N={ball.N} corner > 0", 0.0, scale * mean_field_inf(s, ball.N, ball.density))
    return report
