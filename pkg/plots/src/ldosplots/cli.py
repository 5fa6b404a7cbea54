"""`ldosplot <recipe.json>` — render one figure from a recipe file."""

import argparse
import sys

from .csvio import CsvFormatError
from .figures import render
from .recipe import FigureRecipe, RecipeError


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="ldosplot",
        description="Render a figure (PNG/SVG) from ldos-kit CSV outputs",
    )
    ap.add_argument("recipe", help="recipe JSON: {figure, inputs, out[, title, labels]}")
    ap.add_argument("--out", help="override the recipe's output path")
    args = ap.parse_args(argv)
    try:
        recipe = FigureRecipe.load(args.recipe)
        if args.out:
            recipe = FigureRecipe(figure=recipe.figure, inputs=recipe.inputs,
                                  out=args.out, title=recipe.title,
                                  labels=recipe.labels)
        out = render(recipe)
    except (RecipeError, CsvFormatError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
