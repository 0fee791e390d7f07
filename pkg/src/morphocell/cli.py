"""Command-line interface.

Subcommands: ``figure`` reproduces the fixed recipe set, ``mesh`` and
``spiral`` run arbitrary jobs, ``serve`` starts the JSON service and
``check`` parses an expression without evaluating anything.

Exit codes: 0 success, 2 usage error, 3 input or expression error,
4 numeric domain error.  Set ``MORPHOCELL_LOG`` to a level name (debug,
info, warning, error) to see progress logging.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from typing import Sequence

from . import __version__
from .dsl import free_params, parse, to_source, uses_var
from .errors import (
    DomainError,
    EmptyMeshError,
    LexError,
    MorphocellError,
    OriginError,
    ParseError,
    SinkError,
    TimeError,
    UnboundParamError,
)
from .figures import RECIPES, run_figure
from .geometry import (
    DEFAULT_RESOLUTION_2D,
    DEFAULT_RESOLUTION_3D,
    MAX_RESOLUTION,
    MIN_RESOLUTION,
    Box,
    heightfield_cell,
    implicit_cell,
    sample_heightfield,
    sample_volume,
)
from .jsonio import write_geometry_json
from .mesher import extract_isosurface, triangulate_heightfield
from .objio import write_obj
from .spirals import SpiralSpec, log_spiral
from .svgio import Stroke, write_svg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4

log = logging.getLogger("morphocell")


def _configure_logging() -> None:
    level_name = os.environ.get("MORPHOCELL_LOG", "").strip().upper()
    if level_name:
        level = getattr(logging, level_name, None)
        if isinstance(level, int):
            logging.basicConfig(
                level=level, format="%(levelname)s %(name)s: %(message)s"
            )


def _parse_assignment(text: str) -> tuple[str, float]:
    name, sep, raw = text.partition("=")
    if not sep or not name:
        raise ValueError(f"expected name=value, got {text!r}")
    return name.strip(), float(raw)


def _parse_span(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"expected start:end, got {text!r}")
    return float(lo), float(hi)


def _parse_bounds(text: str) -> list[tuple[float, float]]:
    return [_parse_span(part) for part in text.split(",")]


def _check_resolution(value: int) -> int:
    if not MIN_RESOLUTION <= value <= MAX_RESOLUTION:
        raise ValueError(
            f"resolution must lie in [{MIN_RESOLUTION}, {MAX_RESOLUTION}]"
        )
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphocell",
        description="Space-time cells: expression-defined surfaces, spirals, "
        "meshes and figures.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    commands = parser.add_subparsers(dest="command", required=True)

    figure = commands.add_parser(
        "figure", help="reproduce a named figure (see --list)"
    )
    figure.add_argument("id", nargs="?", help="recipe id, e.g. fig4 or eq1")
    figure.add_argument(
        "--set",
        metavar="NAME=VALUE",
        action="append",
        default=[],
        help="override a recipe parameter (repeatable)",
    )
    figure.add_argument("--out", default=".", help="output directory")
    figure.add_argument("--format", choices=["svg", "obj", "json"])
    figure.add_argument(
        "--list", action="store_true", help="list recipes and exit"
    )

    mesh = commands.add_parser("mesh", help="mesh an expression")
    mesh.add_argument("--expr", required=True, help="field expression")
    mesh.add_argument(
        "--kind", choices=["heightfield", "implicit"], default="heightfield"
    )
    mesh.add_argument("--t", type=float, default=1.0, help="time instant")
    mesh.add_argument("--res", type=int, default=None, help="samples per axis")
    mesh.add_argument("--iso", type=float, default=1.0, help="implicit iso level")
    mesh.add_argument(
        "--bounds",
        help="domain as xmin:xmax,ymin:ymax[,zmin:zmax]; default -2:2 per axis",
    )
    mesh.add_argument(
        "--param",
        metavar="NAME=VALUE",
        action="append",
        default=[],
        help="bind an expression parameter (repeatable)",
    )
    mesh.add_argument("--out", required=True, help="output path (.obj or .json)")

    spiral = commands.add_parser(
        "spiral", help="sample the logarithmic spiral r = phi^(b*theta*t)"
    )
    spiral.add_argument("--b", type=float, default=2.0 / math.pi)
    spiral.add_argument("--t", type=float, default=1.0)
    spiral.add_argument(
        "--theta", default="0:12.566370614359172", help="angle range start:end"
    )
    spiral.add_argument("--samples", type=int, default=1025)
    spiral.add_argument("--out", required=True, help="output path (.svg or .json)")

    serve = commands.add_parser("serve", help="run the JSON geometry service")
    serve.add_argument("--port", type=int, default=8765)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument(
        "--static", default=None, help="directory of UI assets to serve at /"
    )

    check = commands.add_parser("check", help="parse and validate an expression")
    check.add_argument("--expr", required=True)

    return parser


def _cmd_figure(args: argparse.Namespace) -> int:
    if args.list:
        for recipe in RECIPES.values():
            print(f"{recipe.id:8s} {recipe.title}")
        return EXIT_OK
    if not args.id:
        raise ValueError("missing recipe id; try: morphocell figure --list")
    overrides = dict(_parse_assignment(item) for item in args.set)
    os.makedirs(args.out, exist_ok=True)
    paths = run_figure(args.id, overrides, args.out, args.format)
    for path in paths:
        print(path)
    return EXIT_OK


def _cmd_mesh(args: argparse.Namespace) -> int:
    params = dict(_parse_assignment(item) for item in args.param)
    expr = parse(args.expr)
    if args.kind == "heightfield":
        res = _check_resolution(
            args.res if args.res is not None else DEFAULT_RESOLUTION_2D
        )
        spans = _parse_bounds(args.bounds) if args.bounds else [(-2.0, 2.0)] * 2
        if len(spans) != 2:
            raise ValueError("height-field bounds need exactly two axis spans")
        (x0, x1), (y0, y1) = spans
        domain = Box(x0, x1, y0, y1)
        cell = heightfield_cell(expr, domain, params)
        mesh = triangulate_heightfield(sample_heightfield(cell, args.t, res))
    else:
        res = _check_resolution(
            args.res if args.res is not None else DEFAULT_RESOLUTION_3D
        )
        spans = _parse_bounds(args.bounds) if args.bounds else [(-2.0, 2.0)] * 3
        if len(spans) != 3:
            raise ValueError("implicit bounds need exactly three axis spans")
        (x0, x1), (y0, y1), (z0, z1) = spans
        cell = implicit_cell(expr, Box(x0, x1, y0, y1, z0, z1), params, args.iso)
        mesh = extract_isosurface(sample_volume(cell, args.t, res), args.iso)
    if args.out.endswith(".json"):
        count = write_geometry_json(mesh, args.out, t=args.t)
    else:
        count = write_obj(mesh, args.out)
    log.info("wrote %d bytes to %s", count, args.out)
    print(args.out)
    return EXIT_OK


def _cmd_spiral(args: argparse.Namespace) -> int:
    theta = _parse_span(args.theta)
    spec = SpiralSpec(b=args.b, t=args.t, theta_range=theta, samples=args.samples)
    curve = log_spiral(spec)
    if args.out.endswith(".json"):
        count = write_geometry_json(curve, args.out, b=args.b, t=args.t)
    else:
        count = write_svg(curve, args.out, Stroke("blue", None))
    log.info("wrote %d bytes to %s", count, args.out)
    print(args.out)
    return EXIT_OK


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    serve(port=args.port, host=args.host, static_dir=args.static)
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    expr = parse(args.expr)
    names = sorted(free_params(expr))
    print(f"ok: {to_source(expr)}")
    print(f"parameters: {', '.join(names) if names else '(none)'}")
    print(f"uses t: {'yes' if uses_var(expr, 't') else 'no'}")
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "figure": _cmd_figure,
        "mesh": _cmd_mesh,
        "spiral": _cmd_spiral,
        "serve": _cmd_serve,
        "check": _cmd_check,
    }
    try:
        return handlers[args.command](args)
    except (LexError, ParseError, UnboundParamError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, TimeError, OriginError, EmptyMeshError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except SinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except MorphocellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
