"""Physical constants and unit conversions.

All user-facing quantities are photon energies in eV and lengths in nm;
everything internal is SI.  The global time convention is e^{-i omega t}
(documented once, here): passive media have Im[eps] >= 0, outgoing
spherical waves are h_l^(1)(kr), and DFT monitors accumulate with
e^{+i omega t} kernels.
"""

import numpy as np
from scipy import constants

C0 = constants.c
EPS0 = constants.epsilon_0
MU0 = constants.mu_0
HBAR = constants.hbar
Q_E = constants.e

#: rad/s per eV of photon energy
OMEGA_PER_EV = Q_E / HBAR

NM = 1e-9


def ev_to_omega(energy_ev):
    """Convert photon energy (eV) to angular frequency (rad/s)."""
    _check_positive(energy_ev)
    return np.asarray(energy_ev) * OMEGA_PER_EV if np.ndim(energy_ev) else energy_ev * OMEGA_PER_EV


def omega_to_ev(omega):
    """Convert angular frequency (rad/s) to photon energy (eV)."""
    _check_positive(omega)
    return omega / OMEGA_PER_EV


def vacuum_wavevector(energy_ev):
    """Vacuum wavevector k0 = omega/c in 1/m for a photon energy in eV."""
    _check_positive(energy_ev)
    return ev_to_omega(energy_ev) / C0


def nm_to_m(nanometers):
    """Length conversion, nm to m."""
    return np.asarray(nanometers) * NM if np.ndim(nanometers) else nanometers * NM


def _check_positive(x):
    arr = np.asarray(x)
    if np.any(arr <= 0):
        raise ValueError(f"expected a positive physical quantity, got {x}")
