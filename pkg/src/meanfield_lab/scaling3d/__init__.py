"""Three-dimensional scaling claims checked on plane-wave Fermi balls."""

from meanfield_lab.scaling3d.fermi import (
    LIEB_THIRRING_CONSTANT,
    FermiBall,
    closed_shell_sizes,
    fermi_ball,
    fermi_ball_exchange_sum,
    fermi_ball_kinetic,
    lieb_thirring_margin,
    occupied_volume_check,
    shell_sizes,
)
from meanfield_lab.scaling3d.fits import PowerLawFit, fit_exponent, fit_growth_rate
from meanfield_lab.scaling3d.inequalities import (
    RadialProfile,
    gaussian_hls_sides,
    gaussian_profile,
    hardy_sides,
    hardy_spot_check,
    hls_sharp_constant,
    hls_spot_check,
    lorentzian_profile,
)
from meanfield_lab.scaling3d.potential import (
    ball_integral,
    mean_field_constant,
    mean_field_inf,
    mean_field_sup,
    scaled_potential_check,
    scaling_constant_bound,
    unit_cube_integral,
)

__all__ = [
    "LIEB_THIRRING_CONSTANT",
    "FermiBall",
    "PowerLawFit",
    "RadialProfile",
    "ball_integral",
    "closed_shell_sizes",
    "fermi_ball",
    "fermi_ball_exchange_sum",
    "fermi_ball_kinetic",
    "fit_exponent",
    "fit_growth_rate",
    "gaussian_hls_sides",
    "gaussian_profile",
    "hardy_sides",
    "hardy_spot_check",
    "hls_sharp_constant",
    "hls_spot_check",
    "lieb_thirring_margin",
    "lorentzian_profile",
    "mean_field_constant",
    "mean_field_inf",
    "mean_field_sup",
    "occupied_volume_check",
    "scaled_potential_check",
    "scaling_constant_bound",
    "shell_sizes",
    "unit_cube_integral",
]
