"""Scattered dyadic Green function of a concentric multilayer sphere.

Fields in every layer are expanded in vector spherical waves; per angular
order l and polarization (M/TE, N/TM) the radial dependence is a pair of
Riccati-Bessel functions, and tangential-field continuity at each
interface links the layers.  The recursion yields the reflection
coefficient seen from the layer that contains the dipole:

  - dipole in the outermost layer: incident regular wave -> outgoing
    scattered wave (classic Mie coefficient for a single interface);
  - dipole at the center: outgoing source wave -> regular returning wave
    (the real-cavity / local-field response).

Interface conditions (mu = 1 everywhere), with u(r) the Riccati radial
potential and x = k r:  TE: u and du/dr continuous;  TM: n*u and
(1/n)*du/dr continuous.
"""

from dataclasses import dataclass, field

import numpy as np

from ..materials import Medium, refractive_index
from ..units import nm_to_m, vacuum_wavevector
from .bessel import riccati
from .cube import GreenSample, vacuum_im_gf

_TAIL_TOL = 1e-8
_TAIL_RUNS = 3
_LMAX = 150


@dataclass(frozen=True)
class SphereStack:
    """Concentric spherical layers plus the dipole that probes them.

    radii_nm are the interface radii (strictly ascending); media lists the
    layer media innermost first, one longer than radii.  The dipole sits
    on the z axis at radius r_dipole_nm with tangential or radial
    orientation.
    """

    radii_nm: tuple = ()
    media: tuple = field(default_factory=lambda: (Medium.vacuum(),))
    r_dipole_nm: float = 0.0
    orientation: str = "tangential"

    def __post_init__(self):
        radii = tuple(self.radii_nm)
        if len(self.media) != len(radii) + 1:
            raise ValueError("need len(media) == len(radii) + 1")
        if any(r <= 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
            raise ValueError("interface radii must be positive and strictly ascending")
        if any(abs(self.r_dipole_nm - r) < 1e-12 * r for r in radii):
            raise ValueError("dipole radius must not lie exactly on an interface")
        if self.orientation not in ("tangential", "radial"):
            raise ValueError("orientation must be 'tangential' or 'radial'")
        object.__setattr__(self, "radii_nm", radii)
        object.__setattr__(self, "media", tuple(self.media))

    @property
    def dipole_layer(self):
        """Index of the layer containing the dipole (0 = innermost)."""
        for i, r in enumerate(self.radii_nm):
            if self.r_dipole_nm < r:
                return i
        return len(self.radii_nm)


def _interface_matrix(pol, n, x, l):
    """2x2 matrix mapping layer coefficients (A, B) to the continuous pair."""
    psi, dpsi = riccati("j", l, x)
    xi, dxi = riccati("h1", l, x)
    psi, dpsi, xi, dxi = psi[l], dpsi[l], xi[l], dxi[l]
    if pol == "M":
        return np.array([[psi, xi], [n * dpsi, n * dxi]], dtype=complex)
    # TM: (1/eps)*d/dr with eps = n^2 cancels the n in k = n*k0
    return np.array([[n * psi, n * xi], [dpsi, dxi]], dtype=complex)


def _propagate(stack, pol, l, energy_ev, inward):
    """Reflection coefficient in the dipole's layer for one polarization.

    inward=False: dipole in the outermost layer; returns B/A, the outgoing
    amplitude per unit incident regular wave.  inward=True: dipole at the
    center; returns A/B, the regular amplitude per unit outgoing wave.
    """
    k0 = vacuum_wavevector(energy_ev)
    ns = [refractive_index(m, energy_ev) for m in stack.media]
    radii = [nm_to_m(r) for r in stack.radii_nm]
    try:
        if not inward:
            v = np.array([1.0, 0.0], dtype=complex)
            for p, rad in enumerate(radii):
                mp = _interface_matrix(pol, ns[p], ns[p] * k0 * rad, l)
                mq = _interface_matrix(pol, ns[p + 1], ns[p + 1] * k0 * rad, l)
                v = np.linalg.solve(mq, mp @ v)
                v /= np.max(np.abs(v))
            if v[0] == 0:
                raise np.linalg.LinAlgError("vanishing incident amplitude")
            return v[1] / v[0]
        v = np.array([0.0, 1.0], dtype=complex)
        for p in range(len(radii) - 1, -1, -1):
            rad = radii[p]
            mp = _interface_matrix(pol, ns[p], ns[p] * k0 * rad, l)
            mq = _interface_matrix(pol, ns[p + 1], ns[p + 1] * k0 * rad, l)
            v = np.linalg.solve(mp, mq @ v)
            v /= np.max(np.abs(v))
        if v[1] == 0:
            raise np.linalg.LinAlgError("vanishing outgoing amplitude")
        return v[0] / v[1]
    except np.linalg.LinAlgError as err:
        raise RuntimeError(
            f"singular interface matching for {pol} wave, l={l}, {energy_ev} eV: {err}"
        ) from err


def stack_coefficients(stack, l, energy_ev):
    """(r_M, r_N) reflection coefficients in the layer containing the dipole."""
    if l < 1:
        raise ValueError("l must be >= 1")
    layer = stack.dipole_layer
    if layer == len(stack.radii_nm):
        inward = False
    elif layer == 0:
        inward = True
    else:
        raise NotImplementedError("dipole must sit in the innermost or outermost layer")
    return (
        _propagate(stack, "M", l, energy_ev, inward),
        _propagate(stack, "N", l, energy_ev, inward),
    )


def scattered_gf(stack, energy_ev):
    """G_ii^scatt(r_d, r_d) in 1/m^3 for the stack's dipole orientation.

    Vector-spherical-wave series over l, terminated once the running tail
    stays below 1e-8 relative for three consecutive orders (hard cap 150).
    """
    layer = stack.dipole_layer
    if layer != len(stack.radii_nm):
        raise NotImplementedError("scattered_gf expects the dipole in the outermost layer")
    if stack.r_dipole_nm <= 0:
        raise ValueError("dipole radius must be > 0 in the outermost layer")
    k0 = vacuum_wavevector(energy_ev)
    n_bg = refractive_index(stack.media[-1], energy_ev)
    k = n_bg * k0
    u = k * nm_to_m(stack.r_dipole_nm)

    total = 0.0 + 0.0j
    quiet = 0
    for l in range(1, _LMAX + 1):
        r_m, r_n = stack_coefficients(stack, l, energy_ev)
        xi, dxi = riccati("h1", l, u)
        h = xi[l] / u
        if stack.orientation == "tangential":
            term = 1j * k0**2 * k / (8.0 * np.pi) * (2 * l + 1) * (r_m * h**2 + r_n * (dxi[l] / u) ** 2)
        else:
            term = 1j * k0**2 * k / (4.0 * np.pi) * (2 * l + 1) * l * (l + 1) * r_n * (h / u) ** 2
        total += term
        ref = max(abs(total), vacuum_im_gf(energy_ev))
        quiet = quiet + 1 if abs(term) < _TAIL_TOL * ref else 0
        if quiet >= _TAIL_RUNS:
            return total
    raise RuntimeError(f"sphere-wave series not converged at l={_LMAX} for {energy_ev} eV")


def total_ldos_outside(stack, energy_ev):
    """Projected LDOS (= Purcell factor) for a dipole in the lossless outer layer."""
    n_bg = refractive_index(stack.media[-1], energy_ev)
    if abs(n_bg.imag) > 1e-12 * abs(n_bg):
        raise ValueError("total_ldos_outside requires a lossless outermost layer")
    gs = scattered_gf(stack, energy_ev)
    return 1.0 + gs.imag / (vacuum_im_gf(energy_ev) * n_bg.real)


def real_cavity_gf_center(stack, energy_ev):
    """GreenSample for an emitter at the center of the stack (local-field model).

    Only the l = 1 TM wave reaches the center.  The returned g keeps the
    exact imaginary part of the (lossless) core's homogeneous GF plus the
    full complex scattered contribution; the divergent static real part of
    the homogeneous term is dropped.
    """
    if stack.dipole_layer != 0 or stack.r_dipole_nm != 0.0:
        raise ValueError("real_cavity_gf_center expects the dipole at r = 0")
    n_core = refractive_index(stack.media[0], energy_ev)
    if abs(n_core.imag) > 1e-12 * abs(n_core):
        raise ValueError("real-cavity model requires a lossless innermost medium")
    k0 = vacuum_wavevector(energy_ev)
    k1 = n_core.real * k0
    if len(stack.radii_nm) == 0:
        r_in = 0.0 + 0.0j
    else:
        _, r_in = stack_coefficients(stack, 1, energy_ev)
    g = 1j * k0**2 * k1 / (6.0 * np.pi) * (1.0 + r_in)
    return GreenSample.from_g(energy_ev, g)
