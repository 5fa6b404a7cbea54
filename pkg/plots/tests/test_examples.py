"""The shipped example recipes must render as-is (outputs redirected to tmp)."""

import os

import pytest

from ldosplots import cli, image_checksums

EXAMPLES = os.path.join(os.path.dirname(__file__), os.pardir, "examples")


@pytest.mark.parametrize("name", ["fig1e.json", "fig2.json", "fig3.json"])
def test_shipped_recipe_renders(name, tmp_path):
    recipe = os.path.join(EXAMPLES, name)
    out = str(tmp_path / (name.replace(".json", ".png")))
    assert cli.main([recipe, "--out", out]) == 0
    assert os.path.getsize(out) > 0
    assert image_checksums(out)  # every input accounted for
