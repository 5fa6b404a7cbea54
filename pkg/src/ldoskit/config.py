"""Scenario configuration: JSON schema, validation, defaults, geometry realization.

A scenario is one of

  vacuum         empty domain, source at the center
  homogeneous    domain filled with one medium, source at the center
  mnp            sphere of `medium` in `background`, source on the z axis
                 through the sphere center (z in nm or as z/a)
  cavity_homog   homogeneous fill plus a single-cell `cavity` at the source
  cavity_mnp     mnp with the source at the sphere center and a single-cell
                 `cavity` there

Defaults (also in the README table): delta 2 nm, Courant 0.5/sqrt(3), PML
12 cells, band 2.2-3.5 eV with 131 points, y-polarized source, interior
60 cells per axis (homogeneous kinds) or sphere diameter + 2 x 10 cells
padding (mnp kinds, grown along z to keep >= 10 cells beyond the source).
"""

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .materials import DrudeModel, Medium
from .fdtd import GridSpec, SourceSpec, build_geometry

DEFAULT_BAND = (2.2, 3.5, 131)
DEFAULT_DELTA_NM = 2.0
DEFAULT_PML = 12
DEFAULT_INTERIOR = 60
DEFAULT_PADDING = 10

KINDS = ("vacuum", "homogeneous", "mnp", "cavity_homog", "cavity_mnp")


class ConfigError(ValueError):
    """Schema violation; message carries the JSON field path."""

    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


def _medium_to_dict(m):
    if m.kind == "vacuum":
        return {"kind": "vacuum"}
    if m.kind == "dielectric":
        return {"kind": "dielectric", "eps": m.eps_real}
    return {
        "kind": "drude",
        "eps_inf": m.drude.eps_inf,
        "plasma_energy_ev": m.drude.plasma_energy_ev,
        "damping_energy_ev": m.drude.damping_energy_ev,
    }


def _medium_from_dict(d, path):
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError(path, "expected an object with a 'kind' field")
    kind = d["kind"]
    try:
        if kind == "vacuum":
            return Medium.vacuum()
        if kind == "dielectric":
            if "eps" not in d:
                raise ConfigError(f"{path}.eps", "required for dielectric")
            return Medium.dielectric(float(d["eps"]))
        if kind == "drude":
            defaults = DrudeModel()
            return Medium.drude_metal(DrudeModel(
                eps_inf=float(d.get("eps_inf", defaults.eps_inf)),
                plasma_energy_ev=float(d.get("plasma_energy_ev", defaults.plasma_energy_ev)),
                damping_energy_ev=float(d.get("damping_energy_ev", defaults.damping_energy_ev)),
            ))
    except ConfigError:
        raise
    except (TypeError, ValueError) as err:
        raise ConfigError(path, str(err)) from err
    raise ConfigError(f"{path}.kind", f"unknown medium kind {kind!r}")


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated scenario; construct via parse_config or the keyword factory."""

    kind: str
    grid: GridSpec
    frequencies: tuple  # eV, ascending
    source_component: str = "y"
    medium: Medium = None  # sphere / fill medium (non-vacuum kinds)
    background: Medium = field(default_factory=Medium.vacuum)
    radius_nm: float = 0.0  # mnp kinds
    source_z_nm: float = 0.0  # offset from sphere center along z (mnp)
    cavity: Medium = None  # cavity kinds
    out: str = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError("kind", f"must be one of {KINDS}")
        freqs = tuple(float(f) for f in self.frequencies)
        if not freqs or any(f <= 0 for f in freqs) or any(
            b <= a for a, b in zip(freqs, freqs[1:])
        ):
            raise ConfigError("frequencies", "need positive, strictly ascending energies")
        object.__setattr__(self, "frequencies", freqs)
        if self.source_component not in "xyz":
            raise ConfigError("source.component", "must be x, y or z")
        if self.kind in ("homogeneous", "mnp", "cavity_homog", "cavity_mnp") and self.medium is None:
            raise ConfigError("medium", f"required for kind {self.kind!r}")
        if self.kind in ("cavity_homog", "cavity_mnp") and self.cavity is None:
            raise ConfigError("cavity", f"required for kind {self.kind!r}")
        if self.kind in ("mnp", "cavity_mnp"):
            if self.radius_nm <= 0:
                raise ConfigError("radius_nm", "sphere radius must be > 0")
            if self.kind == "cavity_mnp" and self.source_z_nm != 0.0:
                raise ConfigError("source.z_nm", "cavity_mnp puts the source at the sphere center")
            if self.kind == "mnp" and abs(abs(self.source_z_nm) - self.radius_nm) <= self.grid.delta_nm / 2:
                raise ConfigError(
                    "source.z_nm",
                    f"|z - a| = {abs(abs(self.source_z_nm) - self.radius_nm):g} nm is within "
                    f"half a cell of the interface (ambiguous side)",
                )

    # -- layout ---------------------------------------------------------

    def layout(self):
        """Realized run pieces: (grid, (mx,my,mz), media, SourceSpec, meta).

        The source sits on a single E edge; for mnp kinds the sphere center
        is placed so that the source edge midpoint lies exactly on the z
        axis through it, and the requested z offset snaps to the grid (the
        achieved offset is reported in meta['source_z_nm']).
        """
        g = self.grid
        d = g.delta_nm
        shape = g.shape
        comp = "xyz".index(self.source_component)
        half = [0.0, 0.0, 0.0]
        half[comp] = 0.5

        if self.kind in ("vacuum", "homogeneous", "cavity_homog"):
            idx = tuple(s // 2 for s in shape)
            fill = self.background if self.kind == "vacuum" else self.medium
            cavity = self.cavity if self.kind == "cavity_homog" else None
            mx, my, mz, media = build_geometry(
                g, fill, cavity=cavity, source_idx=idx, source_component=self.source_component
            )
            meta = {"source_z_nm": 0.0}
        else:
            dz_cells = int(round(self.source_z_nm / d))
            idx = tuple(s // 2 for s in shape)
            idx = (idx[0], idx[1], idx[2] + dz_cells)
            center_nm = tuple((idx[a] + half[a]) * d for a in range(3))
            center_nm = (center_nm[0], center_nm[1], center_nm[2] - dz_cells * d)
            cavity = self.cavity if self.kind == "cavity_mnp" else None
            mx, my, mz, media = build_geometry(
                g, self.background, sphere=(self.radius_nm, center_nm, self.medium),
                cavity=cavity, source_idx=idx, source_component=self.source_component,
            )
            meta = {"source_z_nm": dz_cells * d, "sphere_center_nm": center_nm}
        return g, (mx, my, mz), media, idx, meta

    # -- serialization --------------------------------------------------

    def to_dict(self):
        d = {
            "kind": self.kind,
            "grid": {
                "delta_nm": self.grid.delta_nm,
                "extent": list(self.grid.extent),
                "courant": self.grid.courant,
                "pml_cells": self.grid.pml_cells,
            },
            "frequencies": list(self.frequencies),
            "source": {"component": self.source_component, "z_nm": self.source_z_nm},
        }
        if self.medium is not None:
            d["medium"] = _medium_to_dict(self.medium)
        if self.background.kind != "vacuum":
            d["background"] = _medium_to_dict(self.background)
        if self.cavity is not None:
            d["cavity"] = _medium_to_dict(self.cavity)
        if self.kind in ("mnp", "cavity_mnp"):
            d["radius_nm"] = self.radius_nm
        if self.out is not None:
            d["out"] = self.out
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def digest(self):
        """Short stable hash of the physics-defining fields (excludes 'out')."""
        d = self.to_dict()
        d.pop("out", None)
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()[:16]


def default_frequencies():
    lo, hi, n = DEFAULT_BAND
    return tuple(np.round(np.linspace(lo, hi, n), 9))


def _default_extent(kind, delta_nm, radius_nm, source_z_nm, padding_cells):
    if kind in ("vacuum", "homogeneous", "cavity_homog"):
        return (DEFAULT_INTERIOR,) * 3
    diameter = int(np.ceil(2 * radius_nm / delta_nm))
    base = diameter + 2 * padding_cells
    # grow z so the source keeps `padding_cells` of clearance to the PML
    reach = int(np.ceil(abs(source_z_nm) / delta_nm)) + diameter // 2 + padding_cells
    return (base, base, max(base, 2 * reach))


def parse_config(text):
    """ScenarioConfig from a JSON document string (defaults filled in)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError("$", f"invalid JSON: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigError("$", "top level must be an object")
    known = {"kind", "grid", "frequencies", "source", "medium", "background",
             "cavity", "radius_nm", "out"}
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown field")
    kind = raw.get("kind")
    if kind not in KINDS:
        raise ConfigError("kind", f"must be one of {KINDS}, got {kind!r}")

    gd = raw.get("grid", {})
    if not isinstance(gd, dict):
        raise ConfigError("grid", "must be an object")
    delta_nm = float(gd.get("delta_nm", DEFAULT_DELTA_NM))
    radius_nm = float(raw.get("radius_nm", 0.0))

    sd = raw.get("source", {})
    if not isinstance(sd, dict):
        raise ConfigError("source", "must be an object")
    if "z_over_a" in sd and "z_nm" in sd:
        raise ConfigError("source", "give z_nm or z_over_a, not both")
    if "z_over_a" in sd:
        if radius_nm <= 0:
            raise ConfigError("source.z_over_a", "needs a positive radius_nm")
        source_z_nm = float(sd["z_over_a"]) * radius_nm
    else:
        source_z_nm = float(sd.get("z_nm", 0.0))

    fd = raw.get("frequencies")
    if fd is None:
        freqs = default_frequencies()
    elif isinstance(fd, list):
        freqs = tuple(float(f) for f in fd)
    elif isinstance(fd, dict):
        try:
            freqs = tuple(np.round(np.linspace(
                float(fd["min_ev"]), float(fd["max_ev"]), int(fd["points"])), 9))
        except KeyError as err:
            raise ConfigError(f"frequencies.{err.args[0]}", "required") from err
    else:
        raise ConfigError("frequencies", "must be a list or {min_ev, max_ev, points}")

    padding = int(gd.get("padding_cells", DEFAULT_PADDING))
    extent = gd.get("extent")
    if extent is None:
        extent = _default_extent(kind, delta_nm, radius_nm, source_z_nm, padding)
    try:
        grid = GridSpec(
            delta_nm=delta_nm,
            extent=tuple(extent) if isinstance(extent, (list, tuple)) else int(extent),
            courant=float(gd.get("courant", GridSpec.__dataclass_fields__["courant"].default)),
            pml_cells=int(gd.get("pml_cells", DEFAULT_PML)),
        )
    except ValueError as err:
        raise ConfigError("grid", str(err)) from err

    medium = _medium_from_dict(raw["medium"], "medium") if "medium" in raw else None
    background = _medium_from_dict(raw["background"], "background") if "background" in raw else Medium.vacuum()
    cavity = _medium_from_dict(raw["cavity"], "cavity") if "cavity" in raw else None

    try:
        return ScenarioConfig(
            kind=kind,
            grid=grid,
            frequencies=freqs,
            source_component=str(sd.get("component", "y")),
            medium=medium,
            background=background,
            radius_nm=radius_nm,
            source_z_nm=source_z_nm,
            cavity=cavity,
            out=raw.get("out"),
        )
    except ConfigError:
        raise
    except ValueError as err:
        raise ConfigError("$", str(err)) from err
