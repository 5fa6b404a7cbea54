"""Readers for the two ldos-kit CSV schemas (the cross-package contract).

Spectrum files:

    # ldos-kit v<version>
    # key=value provenance pairs (optional line)
    energy_ev,re_G,im_G,purcell,flag
    <rows...>

Height-sweep files are identical except the column line starts with
``z_over_a``.  Files whose header version is outside the supported range
are refused, as are files with an unexpected column line.
"""

import hashlib
from dataclasses import dataclass, field

import numpy as np

_MAGIC = "# ldos-kit v"
#: accepted header version prefixes; bump when the upstream schema changes
SUPPORTED_VERSIONS = ("0.1.",)

SPECTRUM_COLUMNS = "energy_ev,re_G,im_G,purcell,flag"
SWEEP_COLUMNS = "z_over_a,energy_ev,re_G,im_G,purcell,flag"


class CsvFormatError(ValueError):
    """The file is not a readable ldos-kit CSV of the expected schema."""


@dataclass(frozen=True)
class SpectrumData:
    path: str
    version: str
    provenance: dict
    energy_ev: np.ndarray
    purcell: np.ndarray
    re_g: np.ndarray
    im_g: np.ndarray
    flags: list = field(default_factory=list)

    @property
    def label(self):
        d = self.provenance.get("delta_nm")
        kind = self.provenance.get("kind", "")
        model = self.provenance.get("model")
        tag = "analytic" if model == "analytic" else kind
        return f"{tag} {d} nm".strip() if d else tag


@dataclass(frozen=True)
class SweepData:
    path: str
    version: str
    provenance: dict
    z_over_a: np.ndarray
    energy_ev: np.ndarray
    purcell: np.ndarray

    @property
    def label(self):
        d = self.provenance.get("delta_nm")
        return f"Δ = {d} nm" if d else "sweep"


def sha256_of(path):
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _read_header(f, path):
    first = f.readline().rstrip("\n")
    if not first.startswith(_MAGIC):
        raise CsvFormatError(f"{path}: not an ldos-kit CSV (first line {first!r})")
    version = first[len(_MAGIC):]
    if not version.startswith(SUPPORTED_VERSIONS):
        raise CsvFormatError(
            f"{path}: unsupported schema version {version!r} "
            f"(supported: {', '.join(v + 'x' for v in SUPPORTED_VERSIONS)})"
        )
    prov = {}
    line = f.readline().rstrip("\n")
    if line.startswith("# "):
        for pair in line[2:].split():
            if "=" in pair:
                k, v = pair.split("=", 1)
                prov[k] = v
        line = f.readline().rstrip("\n")
    return version, prov, line


def _read_rows(f, path, ncols):
    rows = []
    for ln in f:
        if not ln.strip():
            continue
        parts = ln.rstrip("\n").split(",")
        if len(parts) != ncols:
            raise CsvFormatError(f"{path}: expected {ncols} columns, got {len(parts)}")
        rows.append(parts)
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    return rows


def read_spectrum_csv(path):
    with open(path) as f:
        version, prov, cols = _read_header(f, path)
        if cols != SPECTRUM_COLUMNS:
            raise CsvFormatError(f"{path}: unexpected columns {cols!r} "
                                 f"(want {SPECTRUM_COLUMNS!r})")
        rows = _read_rows(f, path, 5)
    col = lambda i: np.array([float(r[i]) for r in rows])
    return SpectrumData(
        path=path, version=version, provenance=prov,
        energy_ev=col(0), re_g=col(1), im_g=col(2), purcell=col(3),
        flags=[r[4] for r in rows],
    )


def read_sweep_csv(path):
    with open(path) as f:
        version, prov, cols = _read_header(f, path)
        if cols != SWEEP_COLUMNS:
            raise CsvFormatError(f"{path}: unexpected columns {cols!r} "
                                 f"(want {SWEEP_COLUMNS!r})")
        rows = _read_rows(f, path, 6)
    col = lambda i: np.array([float(r[i]) for r in rows])
    return SweepData(
        path=path, version=version, provenance=prov,
        z_over_a=col(0), energy_ev=col(1), purcell=col(4),
    )
