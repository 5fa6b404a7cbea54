"""Render publication figures from ldos-kit CSV outputs.

This package only displays data: it reads the CSV files written by the
`ldoskit` CLI, draws them with matplotlib, and embeds a checksum of every
input file in the image metadata.  It never computes physics and never
modifies its inputs, and it does not import the simulation package.
"""

from .csvio import read_spectrum_csv, read_sweep_csv, sha256_of
from .metadata import image_checksums
from .recipe import FigureRecipe, RecipeError
from .figures import plot_fig1e, plot_fig2, plot_fig3, render

__version__ = "0.1.0"

__all__ = [
    "FigureRecipe",
    "RecipeError",
    "plot_fig1e",
    "plot_fig2",
    "plot_fig3",
    "render",
    "read_spectrum_csv",
    "read_sweep_csv",
    "sha256_of",
    "image_checksums",
]
