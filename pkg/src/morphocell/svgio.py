"""SVG 1.1 output for planar geometry.

Arc chains are emitted as native elliptical-arc path segments, never
flattened to line segments.  The geometry's y axis points up, SVG's
points down, so coordinates are emitted with y negated; a mathematically
counterclockwise arc therefore gets sweep flag 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .mesher import Contour
from .sinks import Sink, fmt, write_text
from .spirals import Arc, ArcChain, Polyline

PlanItem = Union[ArcChain, Polyline, Contour, np.ndarray]

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True)
class Stroke:
    color: str = "black"
    width: float | None = None  # None picks 0.8% of the larger viewBox side


def _arc_bbox(arc: Arc) -> tuple[float, float, float, float]:
    xs = [arc.start_point()[0], arc.end_point()[0]]
    ys = [arc.start_point()[1], arc.end_point()[1]]
    m = math.ceil(arc.start_angle / _HALF_PI)
    while m * _HALF_PI <= arc.end_angle:
        x, y = arc.point_at(m * _HALF_PI)
        xs.append(x)
        ys.append(y)
        m += 1
    return min(xs), max(xs), min(ys), max(ys)


def _item_bbox(item: PlanItem) -> tuple[float, float, float, float] | None:
    if isinstance(item, ArcChain):
        if not item.arcs:
            return None
        boxes = [_arc_bbox(a) for a in item.arcs]
        return (
            min(b[0] for b in boxes),
            max(b[1] for b in boxes),
            min(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )
    if isinstance(item, Polyline):
        points = item.points
    elif isinstance(item, Contour):
        if not item.polylines:
            return None
        points = np.vstack(item.polylines)
    else:
        points = np.asarray(item, dtype=np.float64)
    if points.size == 0:
        return None
    return (
        float(points[:, 0].min()),
        float(points[:, 0].max()),
        float(points[:, 1].min()),
        float(points[:, 1].max()),
    )


def _points_path(points: np.ndarray, closed: bool) -> str:
    coords = points.tolist()
    parts = [f"M {fmt(coords[0][0])} {fmt(-coords[0][1])}"]
    parts.extend(f"L {fmt(x)} {fmt(-y)}" for x, y in coords[1:])
    if closed:
        parts.append("Z")
    return " ".join(parts)


def _item_path(item: PlanItem) -> str:
    if isinstance(item, ArcChain):
        x0, y0 = item.arcs[0].start_point()
        parts = [f"M {fmt(x0)} {fmt(-y0)}"]
        for arc in item.arcs:
            x1, y1 = arc.end_point()
            large = 1 if arc.end_angle - arc.start_angle > math.pi else 0
            parts.append(
                f"A {fmt(arc.radius)} {fmt(arc.radius)} 0 {large} 0 "
                f"{fmt(x1)} {fmt(-y1)}"
            )
        return " ".join(parts)
    if isinstance(item, Polyline):
        return _points_path(item.points, closed=False)
    if isinstance(item, Contour):
        return " ".join(
            _points_path(points, closed)
            for points, closed in zip(item.polylines, item.closed)
        )
    return _points_path(np.asarray(item, dtype=np.float64), closed=False)


def svg_text(
    plan: PlanItem | Sequence[PlanItem],
    strokes: Stroke | Sequence[Stroke] | None = None,
) -> str:
    """Render the plan as a standalone SVG document string."""
    items: list[PlanItem]
    if isinstance(plan, (ArcChain, Polyline, Contour, np.ndarray)):
        items = [plan]
    else:
        items = list(plan)
    if strokes is None:
        stroke_list = [Stroke() for _ in items]
    elif isinstance(strokes, Stroke):
        stroke_list = [strokes for _ in items]
    else:
        stroke_list = list(strokes)
        if len(stroke_list) != len(items):
            raise ValueError("need one stroke per plan item")

    boxes = [box for box in (_item_bbox(item) for item in items) if box is not None]
    if not items or not boxes:
        raise ValueError("refusing to write an empty SVG")
    xmin = min(b[0] for b in boxes)
    xmax = max(b[1] for b in boxes)
    ymin = min(b[2] for b in boxes)
    ymax = max(b[3] for b in boxes)
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    pad = 0.04 * span
    xmin, xmax = xmin - pad, xmax + pad
    ymin, ymax = ymin - pad, ymax + pad
    width, height = xmax - xmin, ymax - ymin
    if width >= height:
        pixel_w, pixel_h = 640.0, 640.0 * height / width
    else:
        pixel_w, pixel_h = 640.0 * width / height, 640.0

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{fmt(pixel_w)}" height="{fmt(pixel_h)}" '
        f'viewBox="{fmt(xmin)} {fmt(-ymax)} {fmt(width)} {fmt(height)}">',
    ]
    default_width = 0.008 * max(width, height)
    for item, stroke in zip(items, stroke_list):
        if _item_bbox(item) is None:
            continue
        stroke_width = default_width if stroke.width is None else stroke.width
        lines.append(
            f'<path d="{_item_path(item)}" fill="none" stroke="{stroke.color}" '
            f'stroke-width="{fmt(stroke_width)}" stroke-linecap="round" '
            f'stroke-linejoin="round"/>'
        )
    lines.append("</svg>")
    lines.append("")
    return "\n".join(lines)


def write_svg(
    plan: PlanItem | Sequence[PlanItem],
    sink: Sink,
    strokes: Stroke | Sequence[Stroke] | None = None,
) -> int:
    """Write the plan to ``sink``; returns the byte count."""
    return write_text(sink, svg_text(plan, strokes))
