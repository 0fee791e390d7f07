"""Compact JSON envelopes for every geometry type.

Each envelope carries a ``type`` tag (mesh, contour, polyline, arcchain,
grid, or collection for heterogeneous groups) so consumers can dispatch
without guessing.  Serialization is compact and key-order stable, giving
byte-identical output for identical geometry.
"""

from __future__ import annotations

import json
from typing import Mapping

from .geometry import ScalarGrid2D, ScalarGrid3D
from .mesher import Contour, Mesh
from .sinks import Sink, write_text
from .spirals import ArcChain, Polyline


def geometry_json(obj, **meta) -> dict:
    """Build the JSON-ready dict for a geometry object.

    Keyword arguments are folded in as extra top-level metadata keys.
    Lists and tuples become ``collection`` envelopes.
    """
    if isinstance(obj, Mesh):
        body = {
            "type": "mesh",
            "vertices": obj.vertices.tolist(),
            "triangles": obj.triangles.tolist(),
        }
    elif isinstance(obj, Contour):
        body = {
            "type": "contour",
            "polylines": [
                {"points": points.tolist(), "closed": closed}
                for points, closed in zip(obj.polylines, obj.closed)
            ],
        }
    elif isinstance(obj, Polyline):
        body = {
            "type": "polyline",
            "points": obj.points.tolist(),
            "thetas": obj.thetas.tolist(),
            "radii": obj.radii.tolist(),
        }
    elif isinstance(obj, ArcChain):
        body = {
            "type": "arcchain",
            "arcs": [
                {
                    "center": list(arc.center),
                    "radius": arc.radius,
                    "start_angle": arc.start_angle,
                    "end_angle": arc.end_angle,
                }
                for arc in obj.arcs
            ],
        }
    elif isinstance(obj, (ScalarGrid2D, ScalarGrid3D)):
        body = obj.to_json_dict()
    elif isinstance(obj, (list, tuple)):
        body = {"type": "collection", "items": [geometry_json(item) for item in obj]}
    elif isinstance(obj, Mapping):
        body = dict(obj)
    else:
        raise TypeError(f"no JSON envelope for {type(obj).__name__}")
    body.update(meta)
    return body


def json_text(obj, **meta) -> str:
    return json.dumps(geometry_json(obj, **meta), separators=(",", ":")) + "\n"


def write_geometry_json(obj, sink: Sink, **meta) -> int:
    """Write a geometry envelope to ``sink``; returns the byte count."""
    return write_text(sink, json_text(obj, **meta))
