"""Small JSON service exposing cells, meshes and spirals over HTTP.

Runs entirely on the standard library.  Endpoints:

* ``GET  /api/health``   service and kernel-lane status
* ``GET  /api/recipes``  parameter schemas for the built-in figures
* ``POST /api/mesh``     mesh a recipe or an ad-hoc expression
* ``POST /api/spiral``   sample a spiral recipe or a logarithmic spiral

Any other path is served from the configured static directory, which is
how the browser explorer ships.  Errors always come back as
``{"error": {"code", "message"}}``: 400 for malformed requests, 422 for
requests that are well-formed but numerically impossible.  CORS is wide
open since the service only ever speaks to a local UI.
"""

from __future__ import annotations

import json
import logging
import math
import mimetypes
import os
import posixpath
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import __version__
from ._kernels import active_lane
from .errors import (
    ArityError,
    DomainError,
    EmptyMeshError,
    LexError,
    OriginError,
    ParseError,
    TimeError,
    UnboundParamError,
)
from .figures import RECIPES, figure_artifacts
from .geometry import (
    DEFAULT_RESOLUTION_2D,
    DEFAULT_RESOLUTION_3D,
    MAX_RESOLUTION,
    MIN_RESOLUTION,
    Box,
    Disc,
    SquareDomain,
    heightfield_cell,
    implicit_cell,
    sample_heightfield,
    sample_volume,
)
from .jsonio import geometry_json
from .mesher import extract_isosurface, triangulate_heightfield
from .spirals import GOLDEN_GROWTH, SpiralSpec, log_spiral

log = logging.getLogger("morphocell.server")

# Volume sampling is cubic in resolution, so the service caps it harder
# than the library does; 513**3 is already ~135M samples.
MAX_RESOLUTION_3D = 513

_MAX_BODY_BYTES = 1_000_000


class ApiError(Exception):
    """Request failure with an HTTP status and a stable error code."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _map_exception(exc: Exception) -> ApiError | None:
    if isinstance(exc, LexError):
        return ApiError(400, "LEX_ERROR", str(exc))
    if isinstance(exc, ArityError):
        return ApiError(400, "ARITY_ERROR", str(exc))
    if isinstance(exc, ParseError):
        return ApiError(400, "PARSE_ERROR", str(exc))
    if isinstance(exc, UnboundParamError):
        return ApiError(400, "UNBOUND_PARAM", str(exc))
    if isinstance(exc, TimeError):
        return ApiError(422, "TIME_NOT_POSITIVE", str(exc))
    if isinstance(exc, OriginError):
        return ApiError(422, "ORIGIN_ERROR", str(exc))
    if isinstance(exc, EmptyMeshError):
        return ApiError(422, "EMPTY_MESH", str(exc))
    if isinstance(exc, DomainError):
        return ApiError(422, "DOMAIN_ERROR", str(exc))
    if isinstance(exc, (ValueError, TypeError, KeyError)):
        return ApiError(400, "BAD_REQUEST", str(exc))
    return None


# --- request field helpers -------------------------------------------------


def _number(body: dict, key: str, default: float | None = None) -> float:
    raw = body.get(key, default)
    if raw is None:
        raise ApiError(400, "BAD_REQUEST", f"field {key!r} is required")
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise ApiError(400, "BAD_REQUEST", f"field {key!r} must be a number")
    return float(raw)


def _integer(body: dict, key: str, default: int) -> int:
    value = _number(body, key, default)
    if value != int(value):
        raise ApiError(400, "BAD_REQUEST", f"field {key!r} must be an integer")
    return int(value)


def _check_resolution(value: int, maximum: int) -> int:
    if not MIN_RESOLUTION <= value <= maximum:
        raise ApiError(
            400,
            "RESOLUTION_OUT_OF_RANGE",
            f"resolution must lie in [{MIN_RESOLUTION}, {maximum}]",
        )
    return value


def _param_map(body: dict) -> dict[str, float]:
    raw = body.get("params", {})
    if not isinstance(raw, dict):
        raise ApiError(400, "BAD_REQUEST", "field 'params' must be an object")
    out: dict[str, float] = {}
    for name, value in raw.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ApiError(400, "BAD_REQUEST", f"parameter {name!r} must be a number")
        out[str(name)] = float(value)
    return out


def _planar_domain(body: dict):
    raw = body.get("domain")
    if raw is None:
        return SquareDomain(4.0)
    if not isinstance(raw, dict):
        raise ApiError(400, "BAD_REQUEST", "field 'domain' must be an object")
    shape = raw.get("type")
    if shape == "square":
        return SquareDomain(_number(raw, "side"), bool(raw.get("centered", True)))
    if shape == "disc":
        return Disc(
            _number(raw, "radius"),
            _number(raw, "cx", 0.0),
            _number(raw, "cy", 0.0),
        )
    if shape == "box":
        return Box(
            _number(raw, "xmin"),
            _number(raw, "xmax"),
            _number(raw, "ymin"),
            _number(raw, "ymax"),
        )
    raise ApiError(
        400, "BAD_REQUEST", "domain 'type' must be 'square', 'disc' or 'box'"
    )


def _box_domain(body: dict) -> Box:
    raw = body.get("domain")
    if raw is None:
        return Box(-2.0, 2.0, -2.0, 2.0, -2.0, 2.0)
    if not isinstance(raw, dict) or raw.get("type") != "box":
        raise ApiError(400, "BAD_REQUEST", "an implicit cell needs a box domain")
    return Box(
        _number(raw, "xmin"),
        _number(raw, "xmax"),
        _number(raw, "ymin"),
        _number(raw, "ymax"),
        _number(raw, "zmin", -2.0),
        _number(raw, "zmax", 2.0),
    )


# --- endpoint bodies -------------------------------------------------------


def _recipe_for(body: dict, want_kind: str):
    recipe_id = body.get("recipe")
    recipe = RECIPES.get(recipe_id)
    if recipe is None:
        raise ApiError(
            400, "UNKNOWN_RECIPE", f"unknown recipe {recipe_id!r}; known: {sorted(RECIPES)}"
        )
    if recipe.kind != want_kind:
        endpoint = "/api/mesh" if recipe.kind == "mesh" else "/api/spiral"
        raise ApiError(
            400, "BAD_REQUEST", f"recipe {recipe.id!r} belongs on {endpoint}"
        )
    overrides = body.get("overrides", {})
    if not isinstance(overrides, dict):
        raise ApiError(400, "BAD_REQUEST", "field 'overrides' must be an object")
    if "resolution" in overrides:
        res = _integer(overrides, "resolution", 0)
        _check_resolution(res, MAX_RESOLUTION)
    # Give every parameter an explicit value so multi-instant recipes
    # collapse to the single artifact the caller asked about.
    merged = {p.name: p.default for p in recipe.params}
    merged.update(overrides)
    return recipe, merged


def mesh_response(body: dict) -> dict:
    """Compute the reply for ``POST /api/mesh``."""
    if "recipe" in body:
        recipe, merged = _recipe_for(body, "mesh")
        artifacts = figure_artifacts(recipe.id, merged)
        stem, mesh, _ = artifacts[0]
        return geometry_json(mesh, recipe=recipe.id, name=stem, params=merged)

    expr = body.get("expr")
    if not isinstance(expr, str):
        raise ApiError(400, "BAD_REQUEST", "field 'expr' (or 'recipe') is required")
    kind = body.get("kind", "heightfield")
    t = _number(body, "t", 1.0)
    params = _param_map(body)
    if kind == "heightfield":
        res = _check_resolution(
            _integer(body, "resolution", DEFAULT_RESOLUTION_2D), MAX_RESOLUTION
        )
        cell = heightfield_cell(expr, _planar_domain(body), params)
        mesh = triangulate_heightfield(sample_heightfield(cell, t, res))
    elif kind == "implicit":
        res = _check_resolution(
            _integer(body, "resolution", DEFAULT_RESOLUTION_3D), MAX_RESOLUTION_3D
        )
        iso = _number(body, "iso", 1.0)
        cell = implicit_cell(expr, _box_domain(body), params, iso)
        mesh = extract_isosurface(sample_volume(cell, t, res), iso)
    else:
        raise ApiError(
            400, "BAD_REQUEST", "field 'kind' must be 'heightfield' or 'implicit'"
        )
    return geometry_json(mesh, t=t, resolution=res)


def spiral_response(body: dict) -> dict:
    """Compute the reply for ``POST /api/spiral``."""
    if "recipe" in body:
        recipe, merged = _recipe_for(body, "spiral")
        artifacts = figure_artifacts(recipe.id, merged)
        stem, plan, strokes = artifacts[0]
        items = []
        for item, stroke in zip(plan, strokes):
            envelope = geometry_json(item)
            envelope["stroke"] = {"color": stroke.color, "width": stroke.width}
            items.append(envelope)
        return {"type": "collection", "items": items, "recipe": recipe.id, "name": stem}

    b = _number(body, "b", GOLDEN_GROWTH)
    t = _number(body, "t", 1.0)
    samples = _integer(body, "samples", 1025)
    raw_theta = body.get("theta", [0.0, 4.0 * math.pi])
    if (
        not isinstance(raw_theta, (list, tuple))
        or len(raw_theta) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in raw_theta)
    ):
        raise ApiError(400, "BAD_REQUEST", "field 'theta' must be [start, end]")
    spec = SpiralSpec(b=b, t=t, theta_range=(float(raw_theta[0]), float(raw_theta[1])), samples=samples)
    envelope = geometry_json(log_spiral(spec))
    envelope["stroke"] = {"color": "blue", "width": None}
    return {"type": "collection", "items": [envelope], "b": b, "t": t}


# --- HTTP plumbing ---------------------------------------------------------


class GeometryRequestHandler(BaseHTTPRequestHandler):
    server_version = "morphocell/" + __version__
    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args) -> None:  # noqa: A002
        log.debug("%s %s", self.address_string(), format % args)

    def _send_payload(self, status: int, data: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _send_json(self, status: int, payload: dict) -> None:
        data = json.dumps(payload, separators=(",", ":")).encode("utf-8")
        self._send_payload(status, data, "application/json")

    def _send_api_error(self, error: ApiError) -> None:
        self._send_json(
            error.status, {"error": {"code": error.code, "message": error.message}}
        )

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length > _MAX_BODY_BYTES:
            raise ApiError(400, "BAD_REQUEST", "request body too large")
        raw = self.rfile.read(length) if length else b""
        try:
            body = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ApiError(400, "INVALID_JSON", f"request body is not JSON: {exc}")
        if not isinstance(body, dict):
            raise ApiError(400, "BAD_REQUEST", "request body must be a JSON object")
        return body

    # -- verbs --

    def do_OPTIONS(self) -> None:
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self) -> None:
        path = self.path.partition("?")[0]
        try:
            if path == "/api/health":
                self._send_json(
                    200,
                    {
                        "status": "ok",
                        "kernel_lane": active_lane(),
                        "version": __version__,
                    },
                )
            elif path == "/api/recipes":
                self._send_json(
                    200, {"recipes": [r.schema() for r in RECIPES.values()]}
                )
            elif path.startswith("/api/"):
                self._send_api_error(ApiError(404, "NOT_FOUND", f"no endpoint {path}"))
            else:
                self._serve_static(path)
        except (BrokenPipeError, ConnectionResetError):
            pass

    def do_POST(self) -> None:
        path = self.path.partition("?")[0]
        try:
            try:
                body = self._read_json()
                if path == "/api/mesh":
                    payload = mesh_response(body)
                elif path == "/api/spiral":
                    payload = spiral_response(body)
                else:
                    raise ApiError(404, "NOT_FOUND", f"no endpoint {path}")
                self._send_json(200, payload)
            except ApiError as exc:
                self._send_api_error(exc)
            except Exception as exc:
                mapped = _map_exception(exc)
                if mapped is None:
                    log.exception("unhandled error on %s", path)
                    mapped = ApiError(500, "INTERNAL", "internal server error")
                self._send_api_error(mapped)
        except (BrokenPipeError, ConnectionResetError):
            pass

    # -- static assets --

    def _serve_static(self, path: str) -> None:
        root = getattr(self.server, "static_dir", None)
        if root is None:
            self._send_api_error(
                ApiError(404, "NOT_FOUND", "no static directory configured")
            )
            return
        relative = posixpath.normpath(path.lstrip("/") or "index.html")
        if relative.startswith("..") or os.path.isabs(relative):
            self._send_api_error(ApiError(404, "NOT_FOUND", "no such file"))
            return
        full = os.path.join(root, *relative.split("/"))
        if os.path.isdir(full):
            full = os.path.join(full, "index.html")
        if not os.path.isfile(full):
            self._send_api_error(ApiError(404, "NOT_FOUND", "no such file"))
            return
        ctype = mimetypes.guess_type(full)[0] or "application/octet-stream"
        with open(full, "rb") as handle:
            self._send_payload(200, handle.read(), ctype)


class GeometryServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], static_dir: str | None = None):
        super().__init__(address, GeometryRequestHandler)
        self.static_dir = static_dir


def make_server(
    port: int = 8765, host: str = "127.0.0.1", static_dir: str | None = None
) -> GeometryServer:
    """Bind the service (port 0 picks a free port) without serving yet."""
    if static_dir is not None and not os.path.isdir(static_dir):
        raise ValueError(f"static directory {static_dir!r} does not exist")
    return GeometryServer((host, port), static_dir)


def serve(
    port: int = 8765, host: str = "127.0.0.1", static_dir: str | None = None
) -> None:
    """Run the service until interrupted."""
    with make_server(port, host, static_dir) as server:
        bound_host, bound_port = server.server_address[:2]
        print(f"morphocell service on http://{bound_host}:{bound_port} (Ctrl-C stops)")
        if static_dir is not None:
            print(f"serving UI assets from {static_dir}")
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            print("stopped")
