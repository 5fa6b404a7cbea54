"""Render the real simulation CSVs when present (produced by the main CLI).

These inputs come from long FDTD runs, so they are generated out-of-band
(see ../../results). The tests skip if that directory has not been built.
"""

import json
import os

import pytest

from ldosplots import cli, image_checksums, sha256_of
from ldosplots.recipe import FigureRecipe

RESULTS = os.path.join(os.path.dirname(__file__), os.pardir, os.pardir, "results")

needs_results = pytest.mark.skipif(
    not os.path.isdir(RESULTS), reason="results/ not generated"
)


@needs_results
@pytest.mark.parametrize("name", ["fig1e", "fig2", "fig3"])
def test_real_figure_renders_with_checksums(name, tmp_path):
    recipe_path = os.path.join(RESULTS, f"{name}.json")
    if not os.path.exists(recipe_path):
        pytest.skip(f"{name}.json not generated")
    out = str(tmp_path / f"{name}.png")
    assert cli.main([recipe_path, "--out", out]) == 0
    assert os.path.getsize(out) > 0
    recipe = FigureRecipe.load(recipe_path)
    meta = image_checksums(out)
    for p in recipe.input_paths():
        assert meta[os.path.basename(p)] == sha256_of(p)
