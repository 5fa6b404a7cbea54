"""Permittivity models and their time-domain (ADE) discretization.

The only dispersive model is a single-pole Drude metal,

    eps(omega) = eps_inf - omega_p^2 / (omega^2 + i*gamma*omega),

which with the global e^{-i omega t} convention has Im[eps] >= 0 for all
omega > 0 (passivity).  Its time-domain realization is a polarization
current J obeying  dJ/dt + gamma*J = eps0*omega_p^2*E,  discretized
semi-implicitly (E averaged over the step) so the update is
unconditionally stable:

    J^{n+1} = alpha*J^n + beta*(E^{n+1} + E^n).
"""

from dataclasses import dataclass

import numpy as np

from .units import EPS0, ev_to_omega


@dataclass(frozen=True)
class DrudeModel:
    """Single-pole Drude metal; defaults are the silver-like fit used throughout."""

    eps_inf: float = 6.0
    plasma_energy_ev: float = 7.89
    damping_energy_ev: float = 0.051

    def __post_init__(self):
        if self.eps_inf < 1.0:
            raise ValueError(f"eps_inf must be >= 1, got {self.eps_inf}")
        if self.plasma_energy_ev < 0 or self.damping_energy_ev < 0:
            raise ValueError("plasma and damping energies must be >= 0")


@dataclass(frozen=True)
class Medium:
    """A local medium: vacuum, lossless dielectric, or Drude metal.

    Permeability is fixed to mu = 1 for every medium.
    """

    kind: str = "vacuum"
    eps_real: float = 1.0
    drude: DrudeModel | None = None

    def __post_init__(self):
        if self.kind not in ("vacuum", "dielectric", "drude"):
            raise ValueError(f"unknown medium kind {self.kind!r}")
        if self.kind == "dielectric" and self.eps_real <= 0:
            raise ValueError("dielectric eps_real must be > 0")
        if self.kind == "drude" and self.drude is None:
            raise ValueError("drude medium needs a DrudeModel")

    @staticmethod
    def vacuum():
        return Medium("vacuum")

    @staticmethod
    def dielectric(eps_real):
        return Medium("dielectric", eps_real=float(eps_real))

    @staticmethod
    def drude_metal(model=None):
        return Medium("drude", drude=model if model is not None else DrudeModel())

    @property
    def eps_inf(self):
        """Instantaneous (high-frequency) permittivity seen by the FDTD E update."""
        if self.kind == "vacuum":
            return 1.0
        if self.kind == "dielectric":
            return self.eps_real
        return self.drude.eps_inf

    @property
    def is_dispersive(self):
        return self.kind == "drude" and self.drude.plasma_energy_ev > 0


def permittivity(medium, energy_ev):
    """Complex relative permittivity of `medium` at photon energy `energy_ev` (eV)."""
    if np.any(np.asarray(energy_ev) <= 0):
        raise ValueError("permittivity requires energy_ev > 0")
    if medium.kind == "vacuum":
        return np.ones_like(np.asarray(energy_ev, dtype=float)) + 0j if np.ndim(energy_ev) else 1.0 + 0j
    if medium.kind == "dielectric":
        base = medium.eps_real + 0j
        return np.full(np.shape(energy_ev), base) if np.ndim(energy_ev) else base
    m = medium.drude
    w = ev_to_omega(energy_ev)
    wp = ev_to_omega(m.plasma_energy_ev) if m.plasma_energy_ev > 0 else 0.0
    g = m.damping_energy_ev * ev_to_omega(1.0) if m.damping_energy_ev > 0 else 0.0
    return m.eps_inf - wp**2 / (w**2 + 1j * g * w)


def refractive_index(medium, energy_ev):
    """Complex refractive index, principal square root of eps (Im n >= 0)."""
    return np.sqrt(permittivity(medium, energy_ev))


def ade_coefficients(model, dt):
    """Coefficients of the semi-implicit Drude current update.

    Returns (alpha, beta, j_weight) with

        J^{n+1} = alpha*J^n + beta*(E^{n+1} + E^n)

    and j_weight = (1 + alpha)/2, the factor multiplying J^n in the
    time-centered current (J^{n+1} + J^n)/2 that enters the E update.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    wp = ev_to_omega(model.plasma_energy_ev) if model.plasma_energy_ev > 0 else 0.0
    g = model.damping_energy_ev * ev_to_omega(1.0)
    alpha = (1.0 - g * dt / 2.0) / (1.0 + g * dt / 2.0)
    beta = EPS0 * wp**2 * dt / 2.0 / (1.0 + g * dt / 2.0)
    return alpha, beta, 0.5 * (1.0 + alpha)


def discrete_permittivity(model, dt, energy_ev):
    """Effective eps(omega) realized by the discrete ADE + E update.

    Evaluates the harmonic response of the coupled update (time-centered
    Ampere law plus the semi-implicit J update) at the true angular
    frequency; converges to `permittivity` as dt -> 0 with second order.
    """
    if dt <= 0:
        raise ValueError("dt must be > 0")
    w = ev_to_omega(energy_ev)
    alpha, beta, _ = ade_coefficients(model, dt)
    z = np.exp(-1j * w * dt)
    num = EPS0 * model.eps_inf * (z - 1.0) / dt + beta * (z + 1.0) ** 2 / (2.0 * (z - alpha))
    return num / (-1j * w * EPS0 * np.sqrt(z))
