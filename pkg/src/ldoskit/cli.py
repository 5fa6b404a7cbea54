"""Command-line interface: run orchestration, sweeps, CSV output, comparison.

Output schema (shared by `run`, `analytic`, and the sweep drivers):

    # ldos-kit v<version>
    # key=value provenance pairs (scenario digest, delta_nm, steps, residual, ...)
    energy_ev,re_G,im_G,purcell,flag

All numbers are written in scientific notation with 9 significant digits;
for a fixed config and build the file is byte-identical between runs.
Files are written atomically (temp file + rename).  Exit codes: 0 success,
1 usage/runtime error, 2 comparison or validation failure.
"""

import argparse
import concurrent.futures
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .config import ConfigError, ScenarioConfig, parse_config
from .materials import Medium
from .fdtd import GridSpec, SourceSpec, simulate
from .green import extract_run, records_from_run, extract_gf
from .analytic import (
    GreenSample,
    SphereStack,
    cube_averaged_gf,
    real_cavity_gf_center,
    scattered_gf,
    vacuum_im_gf,
)
from .units import nm_to_m

_HEADER = f"# ldos-kit v{__version__}"
_COLUMNS = "energy_ev,re_G,im_G,purcell,flag"

#: equal-volume sphere radius for the cubic single-cell cavity, in cells
EQUIV_SPHERE_FACTOR = (3.0 / (4.0 * np.pi)) ** (1.0 / 3.0)


def _fmt(x):
    return f"{x:.8e}"


def cache_dir():
    return os.environ.get(
        "LDOSKIT_CACHE", os.path.join(os.path.expanduser("~"), ".cache", "ldoskit")
    )


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


def write_csv(path, rows, provenance):
    """rows: iterable of (energy_ev, complex g, purcell, flag) tuples."""
    lines = [_HEADER]
    prov = " ".join(f"{k}={v}" for k, v in provenance.items())
    if prov:
        lines.append(f"# {prov}")
    lines.append(_COLUMNS)
    for e, g, rho, flag in rows:
        lines.append(",".join([_fmt(e), _fmt(g.real), _fmt(g.imag), _fmt(rho), flag]))
    _atomic_write(path, "\n".join(lines) + "\n")


def read_csv(path):
    """(provenance dict, energies, re_G, im_G, purcell, flags) from our schema."""
    with open(path) as f:
        first = f.readline().rstrip("\n")
        if not first.startswith("# ldos-kit v"):
            raise ValueError(f"{path}: not an ldos-kit CSV (header {first!r})")
        prov = {}
        line = f.readline().rstrip("\n")
        if line.startswith("# "):
            for pair in line[2:].split():
                if "=" in pair:
                    k, v = pair.split("=", 1)
                    prov[k] = v
            line = f.readline().rstrip("\n")
        if line != _COLUMNS:
            raise ValueError(f"{path}: unexpected column line {line!r}")
        data = [ln.rstrip("\n").split(",") for ln in f if ln.strip()]
    e = np.array([float(r[0]) for r in data])
    re = np.array([float(r[1]) for r in data])
    im = np.array([float(r[2]) for r in data])
    rho = np.array([float(r[3]) for r in data])
    flags = [r[4] for r in data]
    prov["version"] = first[len("# ldos-kit v"):]
    return prov, e, re, im, rho, flags


# -- FDTD orchestration -------------------------------------------------


def run_fdtd(config, use_cache=True, progress=None, max_steps=2_000_000,
             envelope_threshold=1e-6):
    """Simulate (or load from the on-disk cache) and return the RunResult."""
    from .fdtd.engine import RunResult

    key = config.digest()
    path = os.path.join(cache_dir(), f"{key}.npz")
    if use_cache and os.path.exists(path):
        z = np.load(path, allow_pickle=False)
        return RunResult(
            energies_ev=z["energies_ev"], e_src=z["e_src"], j_src=z["j_src"],
            steps=int(z["steps"]), residual=float(z["residual"]),
            reason=str(z["reason"]), dt=float(z["dt"]),
            delta_nm=float(z["delta_nm"]), component=str(z["component"]),
            wall_s=float(z["wall_s"]),
        )
    grid, mats, media, idx, meta = config.layout()
    grid.check_resolution(media[0], max(config.frequencies))
    source = SourceSpec(idx=idx, component=config.source_component)
    res = simulate(grid, mats, media, source, np.asarray(config.frequencies),
                   max_steps=max_steps, envelope_threshold=envelope_threshold,
                   progress=progress)
    if use_cache:
        os.makedirs(cache_dir(), exist_ok=True)
        tmp = path + f".tmp{os.getpid()}"
        np.savez(tmp, energies_ev=res.energies_ev, e_src=res.e_src, j_src=res.j_src,
                 steps=res.steps, residual=res.residual, reason=res.reason,
                 dt=res.dt, delta_nm=res.delta_nm, component=res.component,
                 wall_s=res.wall_s)
        os.replace(tmp + ".npz" if not tmp.endswith(".npz") else tmp, path)
    return res


def _result_rows(res):
    flag = "ok" if res.reason == "decayed" else "nondecayed"
    rows = []
    for rec in records_from_run(res):
        s = extract_gf(rec)
        rows.append((s.energy_ev, s.g, s.purcell, flag))
    rows.sort(key=lambda r: r[0])
    return rows


def _provenance(config, res=None, **extra):
    p = {"scenario": config.digest(), "kind": config.kind,
         "delta_nm": config.grid.delta_nm}
    if res is not None:
        p.update(steps=res.steps, residual=f"{res.residual:.3e}",
                 component=res.component)
    p.update(extra)
    return p


def cmd_run(config, out, progress=None):
    res = run_fdtd(config, progress=progress)
    write_csv(out, _result_rows(res), _provenance(config, res))
    return 0


# -- analytic reference -------------------------------------------------


def analytic_rows(config):
    """Same schema as the FDTD rows, from the analytic module."""
    rows = []
    if config.kind == "homogeneous":
        for e in config.frequencies:
            s = GreenSample.from_g(e, cube_averaged_gf(config.medium, e, config.grid.delta_nm))
            rows.append((s.energy_ev, s.g, s.purcell, "ok"))
    elif config.kind == "vacuum":
        for e in config.frequencies:
            s = GreenSample.from_g(e, 1j * vacuum_im_gf(e))
            rows.append((s.energy_ev, s.g, s.purcell, "ok"))
    elif config.kind == "mnp":
        if abs(config.source_z_nm) <= config.radius_nm:
            raise ValueError("analytic mnp reference needs the dipole outside the sphere")
        orient = "tangential" if config.source_component in "xy" else "radial"
        stack = SphereStack(
            radii_nm=(config.radius_nm,), media=(config.medium, config.background),
            r_dipole_nm=abs(config.source_z_nm), orientation=orient,
        )
        for e in config.frequencies:
            gs = scattered_gf(stack, e)
            g = gs + 1j * vacuum_im_gf(e)  # vacuum background homogeneous part
            rows.append((e, g, 1.0 + gs.imag / vacuum_im_gf(e), "ok"))
    elif config.kind in ("cavity_homog", "cavity_mnp"):
        r_cav = EQUIV_SPHERE_FACTOR * config.grid.delta_nm
        radii = [r_cav]
        media = [config.cavity, config.medium]
        if config.kind == "cavity_mnp":
            radii.append(config.radius_nm)
            media.append(config.background)
        stack = SphereStack(radii_nm=tuple(radii), media=tuple(media),
                            r_dipole_nm=0.0, orientation="tangential")
        for e in config.frequencies:
            s = real_cavity_gf_center(stack, e)
            rows.append((s.energy_ev, s.g, s.purcell, "ok"))
    else:
        raise ValueError(f"no analytic reference for kind {config.kind!r}")
    return rows


def cmd_analytic(config, out):
    write_csv(out, analytic_rows(config), _provenance(config, model="analytic"))
    return 0


# -- sweeps -------------------------------------------------------------


def cmd_sweep_height(config, out, z_over_a, threads=1, progress=None):
    """Peak-Purcell-vs-height table for an mnp scenario (one run per height)."""
    if config.kind != "mnp":
        raise ValueError("sweep-height needs an mnp config")
    configs = []
    for za in z_over_a:
        d = config.to_dict()
        d["source"]["z_nm"] = za * config.radius_nm
        del d["grid"]["extent"]  # re-derive per height
        configs.append((za, parse_config(__import__("json").dumps(d))))

    def one(item):
        za, c = item
        res = run_fdtd(c, progress=progress)
        rows = _result_rows(res)
        e, g, rho, flag = max(rows, key=lambda r: r[2])
        return (za, e, g, rho, flag)

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as ex:
            peaks = list(ex.map(one, configs))
    else:
        peaks = [one(c) for c in configs]

    lines = [_HEADER,
             f"# scenario={config.digest()} kind=mnp-sweep delta_nm={config.grid.delta_nm}",
             "z_over_a,energy_ev,re_G,im_G,purcell,flag"]
    for za, e, g, rho, flag in peaks:
        lines.append(",".join([_fmt(za), _fmt(e), _fmt(g.real), _fmt(g.imag), _fmt(rho), flag]))
    _atomic_write(out, "\n".join(lines) + "\n")
    return 0


def cmd_sweep_grid(config, out_prefix, deltas_nm, threads=1, progress=None):
    """One run (and CSV) per grid size; physical extent kept fixed."""
    import json as _json

    base_len = [e * config.grid.delta_nm for e in config.grid.extent]
    items = []
    for d_nm in deltas_nm:
        d = config.to_dict()
        d["grid"]["delta_nm"] = d_nm
        d["grid"]["extent"] = [int(round(l / d_nm)) for l in base_len]
        items.append((d_nm, parse_config(_json.dumps(d))))

    def one(item):
        d_nm, c = item
        res = run_fdtd(c, progress=progress)
        path = f"{out_prefix}_d{d_nm:g}nm.csv"
        write_csv(path, _result_rows(res), _provenance(c, res))
        return path

    if threads > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as ex:
            paths = list(ex.map(one, items))
    else:
        paths = [one(i) for i in items]
    for p in paths:
        print(p)
    return 0


# -- compare ------------------------------------------------------------


def compare_files(path_a, path_b, tol):
    """Max/median relative deviation of the purcell columns; pass iff max <= tol."""
    _, ea, _, _, ra, _ = read_csv(path_a)
    _, eb, _, _, rb, _ = read_csv(path_b)
    if len(ea) != len(eb) or not np.allclose(ea, eb, rtol=0, atol=1e-9):
        raise ValueError("frequency grids do not match")
    scale = np.maximum(np.abs(ra), np.abs(rb))
    scale[scale == 0] = 1.0
    dev = np.abs(ra - rb) / scale
    return {
        "max_dev": float(dev.max()),
        "median_dev": float(np.median(dev)),
        "argmax_ev": float(ea[int(dev.argmax())]),
        "passed": bool(dev.max() <= tol),
    }


def cmd_compare(path_a, path_b, tol):
    rep = compare_files(path_a, path_b, tol)
    status = "PASS" if rep["passed"] else "FAIL"
    print(f"{status} max={rep['max_dev']:.3e} (at {rep['argmax_ev']:g} eV) "
          f"median={rep['median_dev']:.3e} tol={tol:g}")
    return 0 if rep["passed"] else 2


# -- validate -----------------------------------------------------------


def cmd_validate(tol=0.05, progress=None):
    """Reduced-resolution self-checks; exit 2 on any failure."""
    from .analytic.bessel import riccati
    from .materials import DrudeModel, discrete_permittivity

    failures = []

    def check(name, ok, detail=""):
        print(f"  [{'pass' if ok else 'FAIL'}] {name}  {detail}")
        if not ok:
            failures.append(name)

    x = 7.3
    u, up = riccati("j", 40, x)
    v, vp = riccati("h1", 40, x)
    w = u * vp - up * v
    check("riccati Wronskian", bool(np.max(np.abs(w - 1j)) < 1e-9),
          f"max err {np.max(np.abs(w - 1j)):.1e}")

    stack = SphereStack(radii_nm=(20.0,), media=(Medium.vacuum(), Medium.vacuum()),
                        r_dipole_nm=30.0)
    gs = scattered_gf(stack, 3.0)
    check("zero-contrast scattered GF", abs(gs) < 1e-9 * vacuum_im_gf(3.0),
          f"|Gs|/vac {abs(gs)/vacuum_im_gf(3.0):.1e}")

    model = DrudeModel()
    errs = [abs(discrete_permittivity(model, dt, 3.0) - 6 + 7.89**2 / (3.0**2 + 1j * 0.051 * 3.0))
            for dt in (2e-18, 1e-18)]
    check("ADE dispersion convergence", errs[1] < 0.3 * errs[0],
          f"err(2e-18)={errs[0]:.2e} err(1e-18)={errs[1]:.2e}")

    cfg = parse_config(
        '{"kind":"vacuum","grid":{"delta_nm":4.0,"extent":[40,40,40]},'
        '"frequencies":{"min_ev":2.2,"max_ev":3.5,"points":14}}'
    )
    res = run_fdtd(cfg, progress=progress)
    rho = np.array([s.purcell for s in extract_run(res)])
    check("vacuum Purcell (coarse)", bool(np.max(np.abs(rho - 1)) < tol),
          f"max |rho-1| {np.max(np.abs(rho - 1)):.3f}")

    print(("validation passed" if not failures else f"validation FAILED: {failures}"))
    return 0 if not failures else 2


# -- entry point --------------------------------------------------------


def _load_config(path):
    with open(path) as f:
        return parse_config(f.read())


def main(argv=None):
    ap = argparse.ArgumentParser(prog="ldoskit",
                                 description="Regularized Green function / Purcell factor toolkit")
    ap.add_argument("--threads", type=int,
                    default=int(os.environ.get("LDOSKIT_THREADS", "1")))
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("run", help="FDTD scenario -> CSV spectrum")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("analytic", help="analytic reference -> CSV spectrum")
    p.add_argument("--config", required=True)
    p.add_argument("--out")

    p = sub.add_parser("sweep-height", help="peak Purcell vs z/a for an mnp config")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--z-over-a", required=True,
                   help="comma-separated list, e.g. 0.2,0.4,...,1.8")

    p = sub.add_parser("sweep-grid", help="same scenario at several grid sizes")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="output prefix; _d<delta>nm.csv appended")
    p.add_argument("--deltas", required=True, help="comma-separated delta_nm list")

    p = sub.add_parser("compare", help="relative deviation of two purcell columns")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--tol", type=float, default=0.05)

    p = sub.add_parser("validate", help="reduced-resolution self-checks")
    p.add_argument("--tol", type=float, default=0.05)

    args = ap.parse_args(argv)
    try:
        if args.cmd in ("run", "analytic", "sweep-height", "sweep-grid"):
            config = _load_config(args.config)
            out = getattr(args, "out", None) or config.out
            if out is None:
                raise ValueError("no output path (--out flag or 'out' config field)")
        if args.cmd == "run":
            progress = None if args.quiet else _print_progress
            res = run_fdtd(config, use_cache=not args.no_cache, progress=progress)
            write_csv(out, _result_rows(res), _provenance(config, res))
            return 0
        if args.cmd == "analytic":
            return cmd_analytic(config, out)
        if args.cmd == "sweep-height":
            za = [float(x) for x in args.z_over_a.split(",")]
            return cmd_sweep_height(config, out, za, threads=args.threads)
        if args.cmd == "sweep-grid":
            deltas = [float(x) for x in args.deltas.split(",")]
            return cmd_sweep_grid(config, out, deltas, threads=args.threads)
        if args.cmd == "compare":
            return cmd_compare(args.file_a, args.file_b, args.tol)
        if args.cmd == "validate":
            return cmd_validate(tol=args.tol)
    except (ConfigError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 1


def _print_progress(step, env):
    print(f"\r  step {step:>8d}  envelope {env:.2e}", end="", file=sys.stderr, flush=True)


if __name__ == "__main__":
    sys.exit(main())
