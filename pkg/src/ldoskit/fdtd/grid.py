"""Grid specification, CPML profiles, and staircased geometry assignment."""

from dataclasses import dataclass

import numpy as np

from ..units import C0, EPS0, MU0, NM, ev_to_omega
from ..materials import Medium, refractive_index

#: 3D Courant stability bound for the cubic Yee grid
COURANT_LIMIT = 0.99 / np.sqrt(3.0)

# CPML grading: polynomial order, max coordinate stretch, sigma_max as a
# fraction of the matched-impedance optimum, CFS alpha at the interface.
PML_M = 3
PML_KAPPA_MAX = 5.0
PML_SIGMA_RATIO = 0.8
PML_ALPHA_MAX = 0.2
ETA0 = np.sqrt(MU0 / EPS0)


@dataclass(frozen=True)
class GridSpec:
    """Uniform cubic grid: cell size, interior extent per axis, Courant number, PML depth."""

    delta_nm: float
    extent: tuple  # interior cells per axis (nx, ny, nz)
    courant: float = 0.5 / np.sqrt(3.0)
    pml_cells: int = 12

    def __post_init__(self):
        if self.delta_nm <= 0:
            raise ValueError("delta must be > 0")
        if not (0.0 < self.courant <= COURANT_LIMIT):
            raise ValueError(f"courant must be in (0, {COURANT_LIMIT:.4f}], got {self.courant}")
        if self.pml_cells < 4:
            raise ValueError("pml_cells must be >= 4")
        ext = self.extent
        if isinstance(ext, (int, np.integer)):
            ext = (int(ext),) * 3
        ext = tuple(int(e) for e in ext)
        if any(e < 4 for e in ext):
            raise ValueError("interior extent must be >= 4 cells per axis")
        object.__setattr__(self, "extent", ext)

    @property
    def delta(self):
        return self.delta_nm * NM

    @property
    def dt(self):
        return self.courant * self.delta / C0

    @property
    def shape(self):
        return tuple(e + 2 * self.pml_cells for e in self.extent)

    def check_resolution(self, background, max_energy_ev, points_per_wavelength=20):
        """Highest requested frequency must keep >= 20 cells per background wavelength."""
        n = refractive_index(background, max_energy_ev)
        lam = 2 * np.pi * C0 / ev_to_omega(max_energy_ev) / max(n.real, 1.0)
        if lam < points_per_wavelength * self.delta:
            raise ValueError(
                f"grid too coarse: wavelength {lam/NM:.1f} nm at {max_energy_ev} eV "
                f"< {points_per_wavelength} cells of {self.delta_nm} nm"
            )


def pml_profiles(n_points, npml, delta, dt, eps_bg=1.0):
    """1D CPML coefficient arrays at integer and half-integer positions.

    Returns (kap_i, b_i, c_i, kap_h, b_h, c_h), each length n_points.
    Arrays are float32 for direct use in the kernels; entries outside the
    PML slabs are the identity (kappa=1, b=0 unused, c=0).
    """
    sigma_max = PML_SIGMA_RATIO * (PML_M + 1) / (ETA0 * delta * np.sqrt(eps_bg))

    def coeffs(rho):
        rho = np.clip(rho, 0.0, 1.0)
        sig = sigma_max * rho**PML_M
        kap = 1.0 + (PML_KAPPA_MAX - 1.0) * rho**PML_M
        alp = PML_ALPHA_MAX * (1.0 - rho)
        b = np.exp(-(sig / kap + alp) * dt / EPS0)
        denom = sig * kap + kap**2 * alp
        c = np.where(sig > 0, sig * (b - 1.0) / np.where(denom > 0, denom, 1.0), 0.0)
        return kap, b, c

    idx = np.arange(n_points, dtype=float)
    lo, hi = float(npml), float(n_points - 1 - npml)
    rho_i = np.maximum((lo - idx) / npml, (idx - hi) / npml)
    rho_h = np.maximum((lo - (idx + 0.5)) / npml, ((idx + 0.5) - hi) / npml)
    kap_i, b_i, c_i = coeffs(rho_i)
    kap_h, b_h, c_h = coeffs(rho_h)
    to32 = lambda a: np.ascontiguousarray(a, dtype=np.float32)
    return tuple(map(to32, (kap_i, b_i, c_i, kap_h, b_h, c_h)))


def build_geometry(grid, background, sphere=None, cavity=None, source_idx=None, source_component="y"):
    """Per-E-edge material index arrays (staircased midpoint rule).

    sphere: (radius_nm, center_nm_xyz, Medium) or None.  cavity: Medium or
    None; when given, exactly the source E-edge is reassigned (a cell-sized
    lossless pocket around the emitter).  Returns (mx, my, mz, media) with
    media[0] = background, media[1] = sphere medium, media[2] = cavity medium
    (entries present only if used).
    """
    shape = grid.shape
    media = [background]
    mats = [np.zeros(shape, dtype=np.uint8) for _ in range(3)]

    if sphere is not None:
        radius_nm, center_nm, medium = sphere
        if radius_nm < 0:
            raise ValueError("sphere radius must be >= 0")
        if 0 < radius_nm < 3 * grid.delta_nm:
            raise ValueError(f"sphere radius {radius_nm} nm not resolved at {grid.delta_nm} nm grid")
        if radius_nm > 0:
            media.append(medium)
            sid = len(media) - 1
            d = grid.delta_nm
            cx, cy, cz = center_nm
            for comp, m in enumerate(mats):
                # midpoint of the E-edge for each component
                off = [0.0, 0.0, 0.0]
                off[comp] = 0.5
                x = (np.arange(shape[0])[:, None, None] + off[0]) * d - cx
                y = (np.arange(shape[1])[None, :, None] + off[1]) * d - cy
                z = (np.arange(shape[2])[None, None, :] + off[2]) * d - cz
                m[x**2 + y**2 + z**2 < radius_nm**2] = sid

    if cavity is not None:
        if source_idx is None:
            raise ValueError("cavity needs the source cell")
        media.append(cavity)
        cid = len(media) - 1
        comp = "xyz".index(source_component)
        mats[comp][tuple(source_idx)] = cid

    return mats[0], mats[1], mats[2], media
