"""Closed-form and series reference Green functions.

Everything here shares one normalization: E(r) = (1/eps0) * Int G(r,r') P(r') d3r',
so G carries units of 1/m^3 and the lossless homogeneous medium has
Im[G_ii(r,r)] = k0^3 n / (6 pi).
"""

from .cube import GreenSample, hom_gf_im, cube_averaged_gf, vacuum_im_gf
from .bessel import spherical_bessel, riccati
from .multilayer import (
    SphereStack,
    stack_coefficients,
    scattered_gf,
    total_ldos_outside,
    real_cavity_gf_center,
)

__all__ = [
    "GreenSample",
    "hom_gf_im",
    "cube_averaged_gf",
    "vacuum_im_gf",
    "spherical_bessel",
    "riccati",
    "SphereStack",
    "stack_coefficients",
    "scattered_gf",
    "total_ldos_outside",
    "real_cavity_gf_center",
]
