"""Unit tests for Fermi balls, the box potential, fits and the 3D spot checks."""

import numpy as np
import pytest

from meanfield_lab.errors import DomainError
from meanfield_lab.scaling3d import (
    ball_integral,
    closed_shell_sizes,
    fermi_ball,
    fermi_ball_exchange_sum,
    fermi_ball_kinetic,
    fit_exponent,
    fit_growth_rate,
    gaussian_profile,
    hardy_sides,
    hardy_spot_check,
    hls_sharp_constant,
    hls_spot_check,
    lieb_thirring_margin,
    lorentzian_profile,
    mean_field_constant,
    mean_field_inf,
    mean_field_sup,
    occupied_volume_check,
    scaled_potential_check,
    scaling_constant_bound,
    unit_cube_integral,
)


class TestFermiBall:
    """Tests for closed-shell fillings."""

    def test_closed_shells(self) -> None:
        """|k|^2 = 0, 1, 2, 3, 4, 5, 6, 8 give 1, 7, 19, 27, 33, 57, 81, 93."""
        assert closed_shell_sizes(1, 100) == [1, 7, 19, 27, 33, 57, 81, 93]
        assert closed_shell_sizes(20, 60) == [27, 33, 57]

    def test_smallest_closed_shell_above_target(self) -> None:
        ball = fermi_ball(10, c=2.0)

        assert ball.N == 19
        assert ball.fermi_shell == 2
        assert ball.volume == pytest.approx(19 / 2.0)

    def test_kinetic_energy(self) -> None:
        """Six unit momenta in a box of volume 7."""
        ball = fermi_ball(7)

        assert fermi_ball_kinetic(ball) == pytest.approx(6.0 * (2.0 * np.pi) ** 2 * 7 ** (-2 / 3))

    def test_invalid_targets(self) -> None:
        with pytest.raises(DomainError):
            fermi_ball(0)
        with pytest.raises(DomainError):
            fermi_ball(5, c=0.0)

    @pytest.mark.parametrize("N", [7, 19, 57, 123])
    def test_lieb_thirring_and_occupied_volume(self, N: int) -> None:
        ball = fermi_ball(N)

        assert lieb_thirring_margin(ball).passed()
        assert occupied_volume_check(ball).passed()

    def test_lieb_thirring_needs_a_shell(self) -> None:
        """The single k = 0 wave is refused."""
        with pytest.raises(DomainError):
            lieb_thirring_margin(fermi_ball(1))
        with pytest.raises(DomainError):
            occupied_volume_check(fermi_ball(7), fractions=(1.5,))

    def test_exchange_sum(self) -> None:
        assert fermi_ball_exchange_sum(fermi_ball(1)) == 0.0
        assert fermi_ball_exchange_sum(fermi_ball(19)) > 0.0


class TestBoxPotential:
    """Tests for |x|^-s against a constant density in a box."""

    def test_cube_volume(self) -> None:
        assert unit_cube_integral(0.0) == pytest.approx(1.0, rel=1e-5)

    @pytest.mark.parametrize("s", [0.5, 1.0])
    def test_cube_between_balls(self, s: float) -> None:
        """The unit cube sits between the balls of radius 1/2 and sqrt(3)/2."""
        cube = unit_cube_integral(s)

        assert ball_integral(s, 0.5) < cube < ball_integral(s, np.sqrt(3.0) / 2.0)

    def test_ball_quadrature_matches_closed_form(self) -> None:
        assert ball_integral(0.7, 2.0) == pytest.approx(
            ball_integral(0.7, 2.0, quadrature=False), rel=1e-6
        )

    def test_sup_scaling_in_N(self) -> None:
        """sup(|x|^-s * rho) grows like N^(1 - s/3) at fixed density."""
        ratio = mean_field_sup(1.0, 800) / mean_field_sup(1.0, 100)

        assert ratio == pytest.approx(8.0 ** (2.0 / 3.0))
        assert 0.0 < mean_field_inf(1.0, 100) < mean_field_sup(1.0, 100)

    @pytest.mark.parametrize(("N", "c"), [(1, 1.0), (57, 1.0), (500, 2.5)])
    def test_constant_kernel_gives_particle_number(self, N: int, c: float) -> None:
        """v = 1 sees the whole mass N, so the N^-1 scaling leaves exactly 1."""
        assert mean_field_constant(N, c) == pytest.approx(N, rel=1e-5)
        assert mean_field_constant(N, c) / N == pytest.approx(1.0, rel=1e-5)
        assert mean_field_sup(1e-3, N, c) == pytest.approx(N, rel=1e-2)

    def test_constant_kernel_domain(self) -> None:
        with pytest.raises(DomainError):
            mean_field_constant(0)
        with pytest.raises(DomainError):
            mean_field_constant(10, c=0.0)

    def test_exponent_range(self) -> None:
        with pytest.raises(DomainError):
            mean_field_sup(1.2, 10)
        with pytest.raises(DomainError):
            scaling_constant_bound(0.0, 1.0)
        with pytest.raises(DomainError):
            scaling_constant_bound(1.0, 0.0)

    @pytest.mark.parametrize("s", [0.5, 1.0])
    def test_scaled_potential(self, s: float) -> None:
        """The scaled sup stays under C(s, A) and the corner value is positive."""
        report = scaled_potential_check(fermi_ball(57), s)

        assert report.passed(), report.to_dict()
        assert report.details["N"] == 57.0


class TestFits:
    """Tests for the log-log and exponential fits."""

    def test_power_law(self) -> None:
        fit = fit_exponent([1.0, 2.0, 4.0], [3.0, 12.0, 48.0])

        assert fit.exponent == pytest.approx(2.0)
        assert fit.prefactor == pytest.approx(3.0)
        assert fit.residual == pytest.approx(0.0, abs=1e-20)

    def test_power_law_domain(self) -> None:
        with pytest.raises(DomainError):
            fit_exponent([1.0], [1.0])
        with pytest.raises(DomainError):
            fit_exponent([1.0, 2.0], [0.0, 1.0])

    def test_growth_rate(self) -> None:
        times = [0.0, 1.0, 2.0]

        assert fit_growth_rate(times, [2.0 * np.exp(0.5 * t) for t in times]) == pytest.approx(
            0.5
        )
        assert fit_growth_rate(times, [0.0, 0.0, 1.0]) == 0.0


class TestInequalities:
    """Tests for the Hardy and HLS spot checks."""

    def test_hardy_gaussian_ratio(self) -> None:
        """For a unit Gaussian the right side is three times the left, at any dilation."""
        lhs, rhs = hardy_sides(gaussian_profile())
        lhs2, rhs2 = hardy_sides(gaussian_profile().dilated(2.0))

        assert lhs == pytest.approx(2.0 * np.pi**1.5, rel=1e-6)
        assert rhs / lhs == pytest.approx(3.0, rel=1e-6)
        assert rhs2 / lhs2 == pytest.approx(3.0, rel=1e-6)

    def test_hardy_spot_check(self) -> None:
        report = hardy_spot_check([gaussian_profile(0.5), lorentzian_profile(1.0)])

        assert report.passed()
        assert len(report.margins) == 2

    def test_profile_domains(self) -> None:
        with pytest.raises(DomainError):
            lorentzian_profile(0.25)
        with pytest.raises(DomainError):
            gaussian_profile(0.0)

    @pytest.mark.parametrize("s", [0.25, 0.5, 1.0])
    def test_hls(self, s: float) -> None:
        report = hls_spot_check(s)

        assert report.passed()
        assert report.details["constant"] == pytest.approx(hls_sharp_constant(2.0 * s))

    def test_hls_domains(self) -> None:
        with pytest.raises(DomainError):
            hls_sharp_constant(3.0)
        with pytest.raises(DomainError):
            hls_spot_check(1.5)
