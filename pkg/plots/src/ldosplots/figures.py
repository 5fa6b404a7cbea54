"""The three figure builders and the render entry point.

Each plot function reads its input CSVs, draws the figure, and writes the
image with a SHA-256 checksum of every input file embedded in the image
metadata (PNG text chunk / SVG Dublin-Core "source" field), so an image can
always be traced back to the exact data it was drawn from.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .csvio import read_spectrum_csv, read_sweep_csv, sha256_of
from .metadata import CHECKSUM_KEY, checksum_string
from .recipe import FigureRecipe

_STYLES4 = ("-", "--", "-.", ":")


def _save(fig, recipe):
    entries = {os.path.basename(p): sha256_of(p) for p in recipe.input_paths()}
    meta_value = checksum_string(entries)
    ext = os.path.splitext(recipe.out)[1].lower()
    if ext == ".svg":
        metadata = {"Source": meta_value}
    else:
        metadata = {CHECKSUM_KEY: meta_value}
    out_dir = os.path.dirname(os.path.abspath(recipe.out))
    os.makedirs(out_dir, exist_ok=True)
    fig.savefig(recipe.out, metadata=metadata, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return recipe.out


def _label(recipe, key, default):
    return recipe.labels.get(key, default)


def build_fig1e(sweeps, recipe):
    """Peak Purcell factor vs emitter height, log y, sphere edge at z/a = 1."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for i, sw in enumerate(sweeps):
        order = sw.z_over_a.argsort()
        ax.plot(sw.z_over_a[order], sw.purcell[order], marker="o", ms=4,
                ls=_STYLES4[i % len(_STYLES4)],
                label=_label(recipe, f"sweep{i}", sw.label))
    ax.axvline(1.0, color="black", lw=1.2)  # sphere edge
    ax.set_yscale("log")
    ax.set_xlabel("z / a")
    ax.set_ylabel("peak Purcell factor")
    ax.legend(frameon=False)
    if recipe.title:
        ax.set_title(recipe.title)
    return fig


def build_fig2(panels, recipe):
    """Three stacked spectra: homogeneous / sphere center (log), outside (linear)."""
    fig, axes = plt.subplots(3, 1, figsize=(5.0, 8.4), sharex=True)
    names = (("a", "homogeneous"), ("b", "z/a = 0"), ("c", "z/a = 1.2"))
    for ax, (tag, default_title) in zip(axes, names):
        fd = panels[f"{tag}_fdtd"]
        ax.plot(fd.energy_ev, fd.purcell, "-",
                label=_label(recipe, f"{tag}_fdtd", "FDTD"))
        ref = panels.get(f"{tag}_ref")
        if ref is not None:
            ax.plot(ref.energy_ev, ref.purcell, "--",
                    label=_label(recipe, f"{tag}_ref", "analytic"))
        if tag in ("a", "b"):
            ax.set_yscale("log")
        ax.set_ylabel("Purcell factor")
        ax.annotate(f"({tag})  {default_title}", xy=(0.02, 0.92),
                    xycoords="axes fraction", va="top")
        ax.legend(frameon=False, loc="lower right")
    axes[-1].set_xlabel("energy (eV)")
    if recipe.title:
        axes[0].set_title(recipe.title)
    fig.align_ylabels(axes)
    return fig


def build_fig3(curves, recipe):
    """Regularized vs local-field (real cavity) spectra, four curve styles."""
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    order = ("regularized_fdtd", "regularized_ref", "cavity_fdtd", "cavity_ref")
    defaults = ("regularized FDTD", "regularized analytic",
                "local field FDTD", "local field analytic")
    for key, style, default in zip(order, _STYLES4, defaults):
        sp = curves[key]
        ax.plot(sp.energy_ev, sp.purcell, style, label=_label(recipe, key, default))
    ax.set_yscale("log")
    ax.set_xlabel("energy (eV)")
    ax.set_ylabel("Purcell factor")
    ax.legend(frameon=False)
    if recipe.title:
        ax.set_title(recipe.title)
    return fig


def render(recipe):
    """Read the recipe's CSVs, draw the figure, write the image; returns out path."""
    if recipe.figure == "fig1e":
        sweeps = [read_sweep_csv(p) for p in recipe.inputs["sweeps"]]
        fig = build_fig1e(sweeps, recipe)
    elif recipe.figure == "fig2":
        panels = {k: read_spectrum_csv(p) for k, p in recipe.inputs.items()}
        fig = build_fig2(panels, recipe)
    else:
        curves = {k: read_spectrum_csv(p) for k, p in recipe.inputs.items()}
        fig = build_fig3(curves, recipe)
    return _save(fig, recipe)


def plot_fig1e(csvs, out, title="", labels=None):
    """csvs: list of height-sweep CSV paths (one curve each)."""
    return render(FigureRecipe(figure="fig1e", inputs={"sweeps": list(csvs)},
                               out=out, title=title, labels=labels or {}))


def plot_fig2(csvs, out, title="", labels=None):
    """csvs: dict with a_fdtd/b_fdtd/c_fdtd (and optional *_ref) spectrum paths."""
    return render(FigureRecipe(figure="fig2", inputs=dict(csvs), out=out,
                               title=title, labels=labels or {}))


def plot_fig3(csvs, out, title="", labels=None):
    """csvs: dict with regularized_fdtd/_ref and cavity_fdtd/_ref spectrum paths."""
    return render(FigureRecipe(figure="fig3", inputs=dict(csvs), out=out,
                               title=title, labels=labels or {}))
