"""Green-function extraction from recorded self-fields.

The discrete dipole is the injected current density over one cell volume:
p(w) = i J(w) d^3 / w under the e^{-iwt} convention.  With the field
normalization E = (1/eps0) Int G . P, the self Green function is

    G_ii(r0, r0; w) = eps0 E(w) / p(w) = -i eps0 w E(w) / (d^3 J(w)).

The d^3 factor makes the grid dependence of G explicit: it is the same
cell-volume regularization that cube_averaged_gf models analytically.
"""

from dataclasses import dataclass

import numpy as np

from .units import EPS0, ev_to_omega, _check_positive
from .analytic import GreenSample

#: |J_src| below this fraction of its in-band maximum is considered outside
#: the usable source bandwidth.
SPECTRAL_FLOOR = 1e-6


@dataclass(frozen=True)
class ExtractionRecord:
    """Self-field DFT at one frequency for one run.

    e_src, j_src are the complex DFTs of the source-edge field (V/m) and of
    the injected current density (A/m^2); delta is the cell size in metres.
    """

    energy_ev: float
    e_src: complex
    j_src: complex
    delta: float
    component: str = "y"

    def __post_init__(self):
        _check_positive(self.energy_ev)
        _check_positive(self.delta)
        if self.component not in "xyz":
            raise ValueError("component must be x, y or z")
        if self.j_src == 0:
            raise ValueError("j_src must be nonzero (frequency outside source band?)")


def extract_gf(rec):
    """GreenSample for one ExtractionRecord (see module docstring for the formula)."""
    w = ev_to_omega(rec.energy_ev)
    g = -1j * EPS0 * w * rec.e_src / (rec.delta**3 * rec.j_src)
    return GreenSample.from_g(rec.energy_ev, g)


def records_from_run(result):
    """ExtractionRecords for every frequency of a RunResult.

    Raises ValueError if any |J_src| is below SPECTRAL_FLOOR of the in-band
    maximum (the run's source did not cover that frequency).
    """
    jmag = np.abs(result.j_src)
    if jmag.max() == 0:
        raise ValueError("run recorded no injected current")
    low = jmag < SPECTRAL_FLOOR * jmag.max()
    if low.any():
        bad = result.energies_ev[low]
        raise ValueError(f"source spectrum below floor at {bad.tolist()} eV")
    delta = result.delta_nm * 1e-9
    return [
        ExtractionRecord(float(e), complex(es), complex(js), delta, result.component)
        for e, es, js in zip(result.energies_ev, result.e_src, result.j_src)
    ]


def extract_run(result):
    """GreenSamples for every frequency of a RunResult, sorted by energy."""
    samples = [extract_gf(r) for r in records_from_run(result)]
    return sorted(samples, key=lambda s: s.energy_ev)


def purcell_spectrum(samples):
    """(energies_ev, purcell) arrays sorted by energy, plus the peak annotation.

    Returns (energies, purcell, peak) with peak = (energy_ev, value) at the
    spectrum maximum.
    """
    if not samples:
        raise ValueError("need at least one GreenSample")
    s = sorted(samples, key=lambda x: x.energy_ev)
    e = np.array([x.energy_ev for x in s])
    rho = np.array([x.purcell for x in s])
    i = int(np.argmax(rho))
    return e, rho, (float(e[i]), float(rho[i]))
