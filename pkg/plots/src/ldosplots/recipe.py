"""Figure recipes: which CSVs feed which figure, and where the image goes."""

import json
import os
from dataclasses import dataclass, field

#: required / optional input keys per figure
FIGURES = {
    "fig1e": {"required": ["sweeps"], "optional": []},
    "fig2": {
        "required": ["a_fdtd", "b_fdtd", "c_fdtd"],
        "optional": ["a_ref", "b_ref", "c_ref"],
    },
    "fig3": {
        "required": ["regularized_fdtd", "regularized_ref",
                     "cavity_fdtd", "cavity_ref"],
        "optional": [],
    },
}

IMAGE_FORMATS = (".png", ".svg")


class RecipeError(ValueError):
    """The recipe is malformed or references missing inputs."""


@dataclass(frozen=True)
class FigureRecipe:
    """One figure: input CSV paths keyed by role, plus the output image path."""

    figure: str
    inputs: dict
    out: str
    title: str = ""
    labels: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise RecipeError(
                f"unknown figure {self.figure!r} (known: {', '.join(sorted(FIGURES))})"
            )
        spec = FIGURES[self.figure]
        missing = [k for k in spec["required"] if k not in self.inputs]
        if missing:
            raise RecipeError(f"{self.figure}: missing inputs {missing}")
        unknown = [k for k in self.inputs
                   if k not in spec["required"] + spec["optional"]]
        if unknown:
            raise RecipeError(f"{self.figure}: unknown input keys {unknown}")
        ext = os.path.splitext(self.out)[1].lower()
        if ext not in IMAGE_FORMATS:
            raise RecipeError(f"output must end in {IMAGE_FORMATS}, got {self.out!r}")

    def input_paths(self):
        """Flat ordered list of every referenced CSV path."""
        paths = []
        for key in sorted(self.inputs):
            v = self.inputs[key]
            paths.extend(v if isinstance(v, list) else [v])
        return paths

    @staticmethod
    def from_json(text):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as err:
            raise RecipeError(f"recipe is not valid JSON: {err}") from err
        if not isinstance(d, dict):
            raise RecipeError("recipe must be a JSON object")
        allowed = {"figure", "inputs", "out", "title", "labels"}
        extra = set(d) - allowed
        if extra:
            raise RecipeError(f"unknown recipe fields {sorted(extra)}")
        for key in ("figure", "inputs", "out"):
            if key not in d:
                raise RecipeError(f"recipe missing {key!r}")
        if not isinstance(d["inputs"], dict):
            raise RecipeError("'inputs' must map role -> path (or list of paths)")
        return FigureRecipe(
            figure=d["figure"], inputs=d["inputs"], out=d["out"],
            title=d.get("title", ""), labels=d.get("labels", {}),
        )

    @staticmethod
    def load(path):
        with open(path) as f:
            text = f.read()
        recipe = FigureRecipe.from_json(text)
        # resolve relative input/output paths against the recipe's directory
        base = os.path.dirname(os.path.abspath(path))
        rel = lambda p: p if os.path.isabs(p) else os.path.join(base, p)
        inputs = {
            k: [rel(p) for p in v] if isinstance(v, list) else rel(v)
            for k, v in recipe.inputs.items()
        }
        return FigureRecipe(figure=recipe.figure, inputs=inputs,
                            out=rel(recipe.out), title=recipe.title,
                            labels=recipe.labels)
