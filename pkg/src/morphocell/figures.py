"""The closed set of figure recipes and their deterministic file outputs.

Eight recipes cover the canonical artifacts: the time-evolving surface
|xy|^(1/t), the paraboloid dome over its disc, the exp bump family and
the steady singular form, the Fibonacci square tiling with its spiral,
the Fibonacci/golden spiral overlay, and the logarithmic spiral with its
time transform.  Arbitrary expressions go through the generic mesh and
spiral commands instead; the recipe set stays fixed so outputs remain
auditable golden files.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DomainError
from .geometry import (
    DEFAULT_RESOLUTION_2D,
    MAX_RESOLUTION,
    MIN_RESOLUTION,
    CellSpec,
    Disc,
    SquareDomain,
    heightfield_cell,
    sample_heightfield,
)
from .jsonio import write_geometry_json
from .mesher import Contour, Mesh, triangulate_disc, triangulate_heightfield
from .objio import write_obj
from .spirals import (
    GOLDEN_GROWTH,
    SpiralSpec,
    fibonacci_spiral,
    fibonacci_squares,
    golden_spiral,
    log_spiral,
)
from .svgio import Stroke, write_svg


@dataclass(frozen=True)
class RecipeParam:
    name: str
    default: float
    minimum: float | None = None
    maximum: float | None = None
    integer: bool = False

    def schema(self) -> dict:
        out: dict = {"name": self.name, "default": self.default}
        if self.minimum is not None:
            out["min"] = self.minimum
        if self.maximum is not None:
            out["max"] = self.maximum
        if self.integer:
            out["integer"] = True
        return out


@dataclass(frozen=True)
class Recipe:
    id: str
    title: str
    kind: str  # "mesh" or "spiral"
    default_format: str  # "obj" or "svg"
    params: tuple[RecipeParam, ...]
    note: str = ""

    def schema(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "kind": self.kind,
            "format": self.default_format,
            "params": [p.schema() for p in self.params],
            "note": self.note,
        }


_RES = RecipeParam("resolution", DEFAULT_RESOLUTION_2D, MIN_RESOLUTION, MAX_RESOLUTION, True)
_T = RecipeParam("t", 1.0, 0.05, 16.0)

RECIPES: dict[str, Recipe] = {
    r.id: r
    for r in (
        Recipe(
            "fig4",
            "Time-evolving surface z = |xy|^(1/t)",
            "mesh",
            "obj",
            (_T, _RES),
            "without a t override, emits the t = 1, 2, 4 triple",
        ),
        Recipe(
            "fig12a",
            "Bump z = exp(-(x^2+y^2)^(1/t)) at t = 1",
            "mesh",
            "obj",
            (_T, _RES),
        ),
        Recipe(
            "fig12b",
            "Bump z = exp(-(x^2+y^2)^(1/t)) at t = 2",
            "mesh",
            "obj",
            (RecipeParam("t", 2.0, 0.05, 16.0), _RES),
        ),
        Recipe(
            "fig12c",
            "Steady singular form z = -(x^2+y^2) sin(1/sqrt(x^2+y^2))",
            "mesh",
            "obj",
            (_RES,),
        ),
        Recipe(
            "eq1",
            "Paraboloid dome z = H - b(x^2+y^2) over its disc",
            "mesh",
            "obj",
            (
                RecipeParam("H", 10.0, 0.001, 1000.0),
                RecipeParam("b", 0.1, 0.0001, 10.0),
                _RES,
            ),
        ),
        Recipe(
            "fig6",
            "Fibonacci square tiling with its quarter-arc spiral",
            "spiral",
            "svg",
            (RecipeParam("n", 6, 2, 25, True),),
        ),
        Recipe(
            "fig7",
            "Fibonacci spiral (blue) against the golden spiral (red)",
            "spiral",
            "svg",
            (RecipeParam("n", 6, 2, 25, True),),
        ),
        Recipe(
            "fig8",
            "Logarithmic spiral r = phi^(b*theta*t): t = 1 and a slower t",
            "spiral",
            "svg",
            (
                RecipeParam("b", GOLDEN_GROWTH, -2.0, 2.0),
                RecipeParam("t", 0.5, 0.05, 8.0),
                RecipeParam("resolution", 1025, MIN_RESOLUTION, MAX_RESOLUTION, True),
            ),
        ),
    )
}


def _token(value: float) -> str:
    return f"{value:g}"


def _coerce(recipe: Recipe, overrides: Mapping[str, float] | None) -> dict[str, float]:
    declared = {p.name: p for p in recipe.params}
    values = {p.name: p.default for p in recipe.params}
    for name, raw in (overrides or {}).items():
        param = declared.get(name)
        if param is None:
            raise ValueError(
                f"recipe {recipe.id!r} has no parameter {name!r}; "
                f"it declares {sorted(declared)}"
            )
        value = float(raw)
        if param.integer:
            if value != int(value):
                raise ValueError(f"parameter {name!r} must be an integer")
            value = int(value)
        values[name] = value
    resolution = values.get("resolution")
    if resolution is not None and not MIN_RESOLUTION <= resolution <= MAX_RESOLUTION:
        raise ValueError(
            f"resolution must lie in [{MIN_RESOLUTION}, {MAX_RESOLUTION}]"
        )
    for name, value in values.items():
        bound = declared[name]
        if bound.minimum is not None and not (
            bound.minimum <= value <= bound.maximum
        ):
            raise ValueError(
                f"parameter {name!r} must lie in "
                f"[{bound.minimum:g}, {bound.maximum:g}]"
            )
    return values


def fig4_cell() -> CellSpec:
    return heightfield_cell("abs(x*y)^(1/t)", SquareDomain(4.0))


def fig12_cell() -> CellSpec:
    return heightfield_cell("exp(-(x^2+y^2)^(1/t))", SquareDomain(4.0))


def fig12c_cell() -> CellSpec:
    return heightfield_cell(
        "-(x^2+y^2)*sin(1/sqrt(x^2+y^2))",
        SquareDomain(4.0),
        singular_values={(0.0, 0.0): 0.0},
    )


def eq1_cell(H: float, b: float) -> CellSpec:
    if not (H > 0 and b > 0):
        raise DomainError("the dome needs H > 0 and b > 0 for a real disc radius")
    radius = math.sqrt(H / b)
    return heightfield_cell("H - b*(x^2+y^2)", Disc(radius), {"H": H, "b": b})


def _heightfield_mesh(cell: CellSpec, t: float, resolution: int) -> Mesh:
    return triangulate_heightfield(sample_heightfield(cell, t, resolution))


def _square_outlines(n: int) -> Contour:
    rings = []
    for square in fibonacci_squares(n):
        x, y = square.origin
        s = square.side
        rings.append(
            np.asarray(
                [(x, y), (x + s, y), (x + s, y + s), (x, y + s)], dtype=np.float64
            )
        )
    return Contour(tuple(rings), tuple(True for _ in rings))


def figure_artifacts(
    recipe_id: str, overrides: Mapping[str, float] | None = None
) -> list[tuple[str, object, Sequence[Stroke] | None]]:
    """Build the geometry for a recipe: (file stem, payload, svg strokes).

    Mesh payloads are single meshes; spiral payloads are plan item lists
    matching the strokes.
    """
    recipe = RECIPES.get(recipe_id)
    if recipe is None:
        raise ValueError(f"unknown recipe {recipe_id!r}; known: {sorted(RECIPES)}")
    values = _coerce(recipe, overrides)

    if recipe_id == "fig4":
        cell = fig4_cell()
        res = int(values["resolution"])
        instants = [values["t"]] if overrides and "t" in overrides else [1.0, 2.0, 4.0]
        return [
            (f"fig4_t{_token(t)}", _heightfield_mesh(cell, t, res), None)
            for t in instants
        ]
    if recipe_id in ("fig12a", "fig12b"):
        t, res = values["t"], int(values["resolution"])
        mesh = _heightfield_mesh(fig12_cell(), t, res)
        return [(f"{recipe_id}_t{_token(t)}", mesh, None)]
    if recipe_id == "fig12c":
        res = int(values["resolution"])
        return [("fig12c", _heightfield_mesh(fig12c_cell(), 1.0, res), None)]
    if recipe_id == "eq1":
        H, b, res = values["H"], values["b"], int(values["resolution"])
        rings = max(2, (res + 1) // 2)
        sectors = max(8, 4 * (rings - 1))
        mesh = triangulate_disc(eq1_cell(H, b), 1.0, rings, sectors)
        return [(f"eq1_H{_token(H)}_b{_token(b)}", mesh, None)]
    if recipe_id == "fig6":
        n = int(values["n"])
        plan = [_square_outlines(n), fibonacci_spiral(n)]
        strokes = [Stroke("black", 0.04), Stroke("blue", 0.1)]
        return [(f"fig6_n{n}", plan, strokes)]
    if recipe_id == "fig7":
        n = int(values["n"])
        plan = [fibonacci_spiral(n), golden_spiral(n)]
        strokes = [Stroke("blue", 0.1), Stroke("red", 0.1)]
        return [(f"fig7_n{n}", plan, strokes)]
    assert recipe_id == "fig8"
    b, t = values["b"], values["t"]
    samples = int(values["resolution"])
    plan = [
        log_spiral(SpiralSpec(b=b, t=1.0, samples=samples)),
        log_spiral(SpiralSpec(b=b, t=t, samples=samples)),
    ]
    strokes = [Stroke("red", None), Stroke("blue", None)]
    return [(f"fig8_b{_token(b)}_t{_token(t)}", plan, strokes)]


def run_figure(
    recipe_id: str,
    overrides: Mapping[str, float] | None = None,
    out_dir: str | os.PathLike = ".",
    format: str | None = None,
) -> list[str]:
    """Produce a recipe's output files; returns the written paths.

    File names derive only from the recipe and its parameter values, and
    every writer is deterministic, so repeated runs are byte-identical.
    """
    recipe = RECIPES.get(recipe_id)
    if recipe is None:
        raise ValueError(f"unknown recipe {recipe_id!r}; known: {sorted(RECIPES)}")
    chosen = format or recipe.default_format
    if chosen not in ("obj", "svg", "json"):
        raise ValueError(f"unknown format {chosen!r}; use obj, svg or json")
    if chosen == "svg" and recipe.kind == "mesh":
        raise ValueError(f"recipe {recipe_id!r} is 3D; use obj or json")
    if chosen == "obj" and recipe.kind == "spiral":
        raise ValueError(f"recipe {recipe_id!r} is planar; use svg or json")

    written: list[str] = []
    for stem, payload, strokes in figure_artifacts(recipe_id, overrides):
        path = os.path.join(os.fspath(out_dir), f"{stem}.{chosen}")
        if chosen == "obj":
            write_obj(payload, path)
        elif chosen == "svg":
            write_svg(payload, path, strokes)
        else:
            write_geometry_json(payload, path, recipe=recipe_id)
        written.append(path)
    return written
