"""Time-stepping driver: state allocation, soft source, DFT monitors, termination.

The source is a soft (additive) current density on a single E edge, so the
recorded field at that edge is the self-consistent response — exactly the
quantity the Green-function extraction needs.  Frequency monitors are
running DFTs accumulated at half-integer time stamps; the E sample is
time-centered, (E^n + E^{n+1})/2 at t_{n+1/2}, which is the pairing that
makes Re[J*(w) E(w)] the exact discrete work done by the source.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from ..units import EPS0, MU0, ev_to_omega
from ..materials import ade_coefficients
from . import kernels
from .grid import GridSpec, pml_profiles


@dataclass(frozen=True)
class SourceSpec:
    """Gaussian-modulated sinusoid current on one E edge.

    j(t) = amplitude * exp(-((t-delay)/tau)^2) * sin(w_c (t-delay)).
    """

    idx: tuple
    component: str = "y"
    center_ev: float = 2.85
    tau_s: float = 3e-15
    delay_s: float = 1.35e-14
    amplitude: float = 1.0

    def __post_init__(self):
        if self.component not in "xyz":
            raise ValueError("component must be x, y or z")
        if self.tau_s <= 0 or self.amplitude == 0:
            raise ValueError("need tau > 0 and nonzero amplitude")

    def waveform(self, t):
        u = t - self.delay_s
        return self.amplitude * np.exp(-((u / self.tau_s) ** 2)) * np.sin(ev_to_omega(self.center_ev) * u)

    def end_time(self):
        return self.delay_s + 6.0 * self.tau_s

    def check_band(self, energies_ev, floor=1e-4):
        """Spectrum magnitude at every requested frequency >= floor of its peak.

        The envelope spectrum is exp(-(w-wc)^2 tau^2/4), normalized to 1 at
        the carrier, so the comparison is against the true spectral peak even
        if no requested frequency sits near it.
        """
        w = ev_to_omega(np.asarray(energies_ev))
        wc = ev_to_omega(self.center_ev)
        mag = np.exp(-((w - wc) ** 2) * self.tau_s**2 / 4.0)
        if mag.min() < floor:
            raise ValueError(
                f"source bandwidth too narrow: spectral floor {mag.min():.2e} < {floor:.0e} "
                f"over {energies_ev[0]}-{energies_ev[-1]} eV"
            )


@dataclass
class YeeState:
    """All mutable field arrays of one run, zero-initialized.

    E (and the quantities feeding it: J, psi_e) are float64; H and psi_h
    are float32.  The asymmetry is deliberate: on the Yee grid
    div(curl H) = 0 holds exactly for *any* H values, so H roundoff cannot
    deposit charge, but roundoff in the E accumulation does.  With float32
    E the leftover static charge field (which no absorbing boundary can
    remove) beats against the DFT kernel and corrupts Im G at the percent
    level, with a magnitude and sign that depend on the domain size and the
    stopping phase.
    """

    E: list
    H: list
    J: list
    psi_h: list
    psi_e: list

    @staticmethod
    def allocate(shape):
        z32 = lambda: np.zeros(shape, dtype=np.float32)
        z64 = lambda: np.zeros(shape, dtype=np.float64)
        return YeeState(
            E=[z64(), z64(), z64()],
            H=[z32(), z32(), z32()],
            J=[z64(), z64(), z64()],
            psi_h=[z32() for _ in range(6)],
            psi_e=[z64() for _ in range(6)],
        )


@dataclass
class RunResult:
    energies_ev: np.ndarray
    e_src: np.ndarray  # complex DFT of E at the source edge
    j_src: np.ndarray  # complex DFT of the injected current density
    steps: int
    residual: float  # trailing |E| envelope relative to its peak
    reason: str  # "decayed" | "max_steps"
    dt: float
    delta_nm: float
    component: str
    wall_s: float = 0.0
    probe_series: dict = field(default_factory=dict)


def material_tables(media, dt):
    """Per-material float32 coefficient tables (d1, d2, al, be, jw) for the E/J update."""
    d1, d2, al, be, jw = [], [], [], [], []
    for m in media:
        if m.is_dispersive:
            a, b, w = ade_coefficients(m.drude, dt)
        else:
            a, b, w = 1.0, 0.0, 1.0
        denom = EPS0 * m.eps_inf / dt + b / 2.0
        d1.append((EPS0 * m.eps_inf / dt - b / 2.0) / denom)
        d2.append(1.0 / denom)
        al.append(a)
        be.append(b)
        jw.append(w)
    f = lambda v: np.asarray(v, dtype=np.float32)
    return f(d1), f(d2), f(al), f(be), f(jw)


def simulate(grid, mats, media, source, energies_ev, max_steps=2_000_000,
             envelope_threshold=1e-7, check_every=2048, probes=None, progress=None):
    """Run until the source-cell |E| envelope decays below threshold (or max_steps).

    mats: (mx, my, mz) uint8 per-edge material indices; media: material list
    (index 0 is the background, used for the PML grading).  probes: optional
    dict name -> (component, (i,j,k)) recording a full time series.
    Returns a RunResult with per-frequency complex E_src and J_src.
    """
    if not isinstance(grid, GridSpec):
        raise TypeError("grid must be a GridSpec")
    energies_ev = np.asarray(energies_ev, dtype=float)
    source.check_band(energies_ev)
    shape = grid.shape
    dt, delta = grid.dt, grid.delta
    state = YeeState.allocate(shape)
    mx, my, mz = mats
    d1, d2, al, be, jw = material_tables(media, dt)
    nmax = max(shape)
    ikap_i = np.ones((3, nmax), dtype=np.float32)
    b_i = np.zeros((3, nmax), dtype=np.float32)
    c_i = np.zeros((3, nmax), dtype=np.float32)
    ikap_h = np.ones((3, nmax), dtype=np.float32)
    b_h = np.zeros((3, nmax), dtype=np.float32)
    c_h = np.zeros((3, nmax), dtype=np.float32)
    for a, na in enumerate(shape):
        ki, bi, ci, kh, bh, ch = pml_profiles(na, grid.pml_cells, delta, dt, media[0].eps_inf)
        ikap_i[a, :na], b_i[a, :na], c_i[a, :na] = 1.0 / ki, bi, ci
        ikap_h[a, :na], b_h[a, :na], c_h[a, :na] = 1.0 / kh, bh, ch

    # volumetric E-update coefficients (no per-cell gathers in the hot loop)
    D1 = [d1[m] for m in (mx, my, mz)]
    D2 = [d2[m] for m in (mx, my, mz)]

    # bounding box of the dispersive region, with compact coefficient arrays
    disp = (be[mx] > 0) | (be[my] > 0) | (be[mz] > 0)
    has_box = bool(disp.any())
    if has_box:
        nzi = [np.flatnonzero(disp.any(axis=tuple(a for a in range(3) if a != ax)))
               for ax in range(3)]
        (i0, i1), (j0, j1), (k0, k1) = [(int(v[0]), int(v[-1]) + 1) for v in nzi]
        box = (slice(i0, i1), slice(j0, j1), slice(k0, k1))
        G = [(d2[m] * jw[m])[box].copy() for m in (mx, my, mz)]
        AL = [al[m][box].copy() for m in (mx, my, mz)]
        BE = [be[m][box].copy() for m in (mx, my, mz)]
        OLD = [np.zeros(G[0].shape, dtype=np.float64) for _ in range(3)]

    comp = "xyz".index(source.component)
    si, sj, sk = source.idx
    src_mat = (mx, my, mz)[comp][si, sj, sk]
    e_src_arr = state.E[comp]

    omegas = ev_to_omega(energies_ev)
    step_ph = np.exp(1j * omegas * dt)
    run_ph = np.exp(1j * omegas * dt / 2.0)  # phase at t_{n+1/2}, advanced each step
    acc_e = np.zeros(len(omegas), dtype=complex)
    acc_j = np.zeros(len(omegas), dtype=complex)

    probe_series = {name: [] for name in (probes or {})}
    # oscillation envelope: peak-to-peak within each check window, so a
    # residual DC offset (static charge left by roundoff in the source
    # integral, which the PML cannot absorb) does not mask the decay
    peak = 0.0
    wmax = -np.inf
    wmin = np.inf
    src_end = source.end_time()
    reason = "max_steps"
    steps_done = max_steps
    t_wall = time.perf_counter()

    Ex, Ey, Ez = state.E
    Hx, Hy, Hz = state.H
    Jx, Jy, Jz = state.J
    inv_d = np.float32(1.0 / delta)
    dt_mu = np.float32(dt / MU0)

    for nstep in range(max_steps):
        t_half = (nstep + 0.5) * dt
        kernels.update_h(Ex, Ey, Ez, Hx, Hy, Hz, *state.psi_h,
                         ikap_h, b_h, c_h, dt_mu, inv_d)
        e_old = float(e_src_arr[si, sj, sk])
        if has_box:
            kernels.box_save(Ex, Ey, Ez, *OLD, i0, j0, k0)
        kernels.update_e(Ex, Ey, Ez, Hx, Hy, Hz, *D1, *D2,
                         *state.psi_e, ikap_i, b_i, c_i, inv_d)
        if has_box:
            kernels.box_correct(Ex, Ey, Ez, Jx, Jy, Jz, *G, i0, j0, k0)
        jval = source.waveform(t_half) if t_half < src_end else 0.0
        if jval != 0.0:
            # float64 increment with the same float32 d2 the update uses, so
            # the injected current is exactly consistent with the stencil
            e_src_arr[si, sj, sk] += -float(d2[src_mat]) * jval
        if has_box:
            kernels.box_jupdate(Ex, Ey, Ez, Jx, Jy, Jz, *OLD, *AL, *BE, i0, j0, k0)
        e_new = float(e_src_arr[si, sj, sk])

        acc_e += (0.5 * (e_old + e_new) * dt) * run_ph
        acc_j += (jval * dt) * run_ph
        run_ph *= step_ph

        for name in probe_series:
            c, idx = (probes or {})[name]
            probe_series[name].append(float(state.E["xyz".index(c)][tuple(idx)]))

        mag = abs(e_new)
        peak = mag if mag > peak else peak
        wmax = e_new if e_new > wmax else wmax
        wmin = e_new if e_new < wmin else wmin
        if (nstep + 1) % check_every == 0:
            if not np.isfinite(e_new):
                raise FloatingPointError(f"field blew up (non-finite E) at step {nstep + 1}")
            env = (wmax - wmin) / (2.0 * peak) if peak > 0 else 1.0
            if progress is not None:
                progress(nstep + 1, env)
            if t_half > src_end and peak > 0 and env < envelope_threshold:
                steps_done = nstep + 1
                reason = "decayed"
                break
            wmax = -np.inf
            wmin = np.inf

    residual = (wmax - wmin) / (2.0 * peak) if peak > 0 and np.isfinite(wmax) else 0.0
    return RunResult(
        energies_ev=energies_ev,
        e_src=acc_e,
        j_src=acc_j,
        steps=steps_done if reason == "decayed" else max_steps,
        residual=residual,
        reason=reason,
        dt=dt,
        delta_nm=grid.delta_nm,
        component=source.component,
        wall_s=time.perf_counter() - t_wall,
        probe_series={k: np.asarray(v, dtype=np.float32) for k, v in probe_series.items()},
    )
