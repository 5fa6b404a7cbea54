"""Homogeneous and cube-averaged (regularized) Green functions.

The equal-argument GF of a lossy homogeneous medium diverges; averaging it
over a cubic cell of side Delta keeps it finite and reproduces what a
grid-based solver with that cell size measures.  For the kernel
G = (k^2 I + grad grad) e^{ikR}/(4 pi R) / eps  (k = n k0) the cell average
splits into a closed-form static part, a smooth quadrature, and the dyadic
delta depolarization term -1/(3 eps):

    <G_ii> = [ (2 k^2 / 3) * C(k, Delta) - 1/3 ] / (eps * Delta^3),
    C      = Int_cube e^{ikR} / (4 pi R) dV.
"""

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from ..units import nm_to_m, vacuum_wavevector
from ..materials import permittivity, refractive_index

#: Int over a unit cube (centered on the source) of 1/r, in closed form.
CUBE_SELF_POTENTIAL = 3.0 * np.log(2.0 + np.sqrt(3.0)) - np.pi / 2.0

_QUAD_TOL = 1e-6


@dataclass(frozen=True)
class GreenSample:
    """Equal-argument Green function value and its derived LDOS/Purcell factor.

    ldos_rel is Im g normalized by the vacuum value k0^3/(6 pi); with that
    normalization it directly equals the Purcell factor.
    """

    energy_ev: float
    g: complex
    ldos_rel: float

    @property
    def purcell(self):
        return self.ldos_rel

    @staticmethod
    def from_g(energy_ev, g):
        return GreenSample(energy_ev, complex(g), float(np.imag(g) / vacuum_im_gf(energy_ev)))


def vacuum_im_gf(energy_ev):
    """Im G_ii of vacuum at coincidence, k0^3/(6 pi) in 1/m^3."""
    k0 = vacuum_wavevector(energy_ev)
    return k0**3 / (6.0 * np.pi)


def hom_gf_im(medium, energy_ev):
    """Im G_ii(r, r) of a lossless homogeneous medium: k0^3 n / (6 pi).

    Raises for lossy media, where the coincidence limit diverges; use
    cube_averaged_gf there instead.
    """
    n = refractive_index(medium, energy_ev)
    if abs(n.imag) > 1e-12 * abs(n):
        raise ValueError(
            "homogeneous GF diverges at coincidence in a lossy medium "
            f"(Im n = {n.imag:.3e} at {energy_ev} eV); use cube_averaged_gf"
        )
    return vacuum_im_gf(energy_ev) * n.real


def cube_averaged_gf(medium, energy_ev, delta_nm, order=20):
    """Cell-averaged equal-argument GF <G_ii> over a cube of side delta_nm.

    Valid for any medium including lossy metals.  The oscillatory part is
    integrated with tensor Gauss-Legendre quadrature (the integrand
    (e^{ikR}-1)/R is entire); convergence is verified against a lower
    order and must reach 1e-6 relative.
    """
    if delta_nm <= 0:
        raise ValueError("delta must be > 0")
    eps = permittivity(medium, energy_ev)
    k = refractive_index(medium, energy_ev) * vacuum_wavevector(energy_ev)
    delta = nm_to_m(delta_nm)

    c_static = delta**2 * CUBE_SELF_POTENTIAL / (4.0 * np.pi)
    c_smooth = _smooth_part(k, delta, order)
    c_check = _smooth_part(k, delta, max(8, order - 8))
    c_total = c_static + c_smooth
    achieved = abs(c_smooth - c_check) / max(abs(c_total), 1e-300)
    if achieved > _QUAD_TOL:
        raise RuntimeError(
            f"cube quadrature did not converge: achieved {achieved:.2e} relative, need {_QUAD_TOL:.0e}"
        )
    return ((2.0 * k**2 / 3.0) * c_total - 1.0 / 3.0) / (eps * delta**3)


def _smooth_part(k, delta, order):
    """Int over the cube of (e^{ikR}-1)/(4 pi R), by symmetry 8x one octant."""
    x, w = leggauss(order)
    half = delta / 2.0
    x = (x + 1.0) * (half / 2.0)
    w = w * (half / 2.0)
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    R = np.sqrt(X**2 + Y**2 + Z**2)
    W = w[:, None, None] * w[None, :, None] * w[None, None, :]
    integrand = np.where(R > 0, (np.exp(1j * k * R) - 1.0) / (4.0 * np.pi * np.where(R > 0, R, 1.0)), 1j * k / (4.0 * np.pi))
    return 8.0 * np.sum(W * integrand)
