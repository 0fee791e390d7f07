"""Triangle meshes and level sets from scalar grids.

Three extractors live here:

* height-field triangulation: two triangles per complete lattice cell with
  a fixed lower-left to upper-right diagonal; cells touching a hole are
  omitted; triangles wind counterclockwise seen from +z.
* isocontour extraction (marching squares): oriented segments chained into
  polylines with the low-value region on the left; the ambiguous saddle
  cases are resolved by comparing the cell average to the iso level.
* isosurface extraction (marching cubes): the per-cube triangulations are
  built from the same 2D face rule applied to all six faces, which makes
  neighbouring cubes agree on shared faces and keeps the surface
  watertight; triangle normals point from low values toward high values.

A corner counts as inside when its value is strictly below iso, so
boundary-valued nodes sit on the extracted set itself.  Edge interpolation
always runs from the lower lattice index to the higher one, making shared
vertices bit-identical however they are reached.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .dsl import compile_program
from .errors import EmptyMeshError
from .geometry import (
    HEIGHTFIELD,
    CellSpec,
    Disc,
    ScalarGrid2D,
    ScalarGrid3D,
    check_time,
)

# --- mesh and contour types ------------------------------------------------


@dataclass(frozen=True)
class Mesh:
    """Indexed triangle mesh; ``vertices`` is (N, 3), ``triangles`` (M, 3)."""

    vertices: np.ndarray
    triangles: np.ndarray
    normals: np.ndarray | None = None

    @property
    def vertex_count(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def triangle_count(self) -> int:
        return int(self.triangles.shape[0])


@dataclass(frozen=True)
class Contour:
    """Planar level set: polylines with a closed flag per polyline."""

    polylines: tuple[np.ndarray, ...]
    closed: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.polylines)


@dataclass(frozen=True)
class MeshReport:
    violations: tuple[str, ...]
    boundary_edges: int
    nonmanifold_edges: int

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_mesh(mesh: Mesh) -> MeshReport:
    """Check index validity, finiteness and degeneracy; count edge sharing.

    Boundary edges belong to exactly one triangle; non-manifold edges to
    more than two.
    """
    violations: list[str] = []
    nverts = mesh.vertex_count
    tris = np.asarray(mesh.triangles)
    if tris.size and (tris.min() < 0 or tris.max() >= nverts):
        violations.append("triangle index out of range")
    if not np.all(np.isfinite(mesh.vertices)):
        violations.append("non-finite vertex coordinate")
    degenerate = 0
    for a, b, c in tris.tolist():
        if a == b or b == c or a == c:
            degenerate += 1
    if degenerate:
        violations.append(f"{degenerate} triangle(s) repeat a vertex index")
    edges: Counter = Counter()
    for a, b, c in tris.tolist():
        for u, v in ((a, b), (b, c), (c, a)):
            edges[(u, v) if u < v else (v, u)] += 1
    boundary = sum(1 for n in edges.values() if n == 1)
    nonmanifold = sum(1 for n in edges.values() if n > 2)
    return MeshReport(tuple(violations), boundary, nonmanifold)


# --- height-field triangulation -------------------------------------------


def triangulate_heightfield(grid: ScalarGrid2D) -> Mesh:
    """Lift a 2D grid to the surface z = value with a fixed diagonal split.

    Raises :class:`EmptyMeshError` when no lattice cell has four finite
    corners.
    """
    values = grid.values
    finite = np.isfinite(values)
    complete = finite[:-1, :-1] & finite[:-1, 1:] & finite[1:, :-1] & finite[1:, 1:]
    if not complete.any():
        raise EmptyMeshError("no complete lattice cell to triangulate")

    used = np.zeros_like(finite)
    used[:-1, :-1] |= complete
    used[:-1, 1:] |= complete
    used[1:, :-1] |= complete
    used[1:, 1:] |= complete

    index = np.full(values.shape, -1, dtype=np.int64)
    index[used] = np.arange(int(used.sum()))

    xs, ys = grid.xs(), grid.ys()
    jj, ii = np.nonzero(used)
    vertices = np.column_stack((xs[ii], ys[jj], values[jj, ii]))

    cj, ci = np.nonzero(complete)
    a = index[cj, ci]
    b = index[cj, ci + 1]
    c = index[cj + 1, ci + 1]
    d = index[cj + 1, ci]
    triangles = np.empty((2 * len(a), 3), dtype=np.int32)
    triangles[0::2] = np.column_stack((a, b, c))
    triangles[1::2] = np.column_stack((a, c, d))
    return Mesh(vertices, triangles)


def triangulate_disc(
    cell: CellSpec, t: float = 1.0, rings: int = 65, sectors: int = 256
) -> Mesh:
    """Triangulate a height field over a disc in polar layout.

    Unlike the rectangular grid path, the outermost vertex ring lies
    exactly on the disc boundary, so rim values are sampled rather than
    lost to hole gating.
    """
    if cell.kind != HEIGHTFIELD or not isinstance(cell.domain, Disc):
        raise ValueError("triangulate_disc needs a height-field cell over a disc")
    if rings < 2 or sectors < 3:
        raise ValueError("need rings >= 2 and sectors >= 3")
    check_time(cell.expr, t)
    disc = cell.domain
    g = compile_program(cell.expr, cell.params).pyfunc

    vertices = [(disc.cx, disc.cy, g(disc.cx, disc.cy, 0.0, t))]
    dtheta = (2.0 * math.pi) / sectors
    for k in range(1, rings):
        r = disc.radius * (k / (rings - 1))
        for s in range(sectors):
            theta = s * dtheta
            x = disc.cx + r * math.cos(theta)
            y = disc.cy + r * math.sin(theta)
            vertices.append((x, y, g(x, y, 0.0, t)))

    def ring_vertex(k: int, s: int) -> int:
        return 1 + (k - 1) * sectors + (s % sectors)

    triangles: list[tuple[int, int, int]] = []
    for s in range(sectors):
        triangles.append((0, ring_vertex(1, s), ring_vertex(1, s + 1)))
    for k in range(1, rings - 1):
        for s in range(sectors):
            p0 = ring_vertex(k, s)
            p1 = ring_vertex(k + 1, s)
            p2 = ring_vertex(k + 1, s + 1)
            p3 = ring_vertex(k, s + 1)
            triangles.append((p0, p1, p2))
            triangles.append((p0, p2, p3))
    return Mesh(
        np.asarray(vertices, dtype=np.float64),
        np.asarray(triangles, dtype=np.int32),
    )


# --- marching squares ------------------------------------------------------

# Local face/cell edges: 0 = south, 1 = east, 2 = north, 3 = west.  Corner
# bits: a=(0,0) -> 1, b=(1,0) -> 2, c=(1,1) -> 4, d=(0,1) -> 8; a corner is
# set when its value is strictly below iso.  Each entry lists oriented
# (from-edge, to-edge) segments keeping the below-iso region on the left.
_SEGMENTS: dict[int, tuple[tuple[int, int], ...]] = {
    1: ((0, 3),),
    2: ((1, 0),),
    3: ((1, 3),),
    4: ((2, 1),),
    6: ((2, 0),),
    7: ((2, 3),),
    8: ((3, 2),),
    9: ((0, 2),),
    11: ((1, 2),),
    12: ((3, 1),),
    13: ((0, 1),),
    14: ((3, 0),),
}
_SADDLE_LOW = {5: ((0, 1), (2, 3)), 10: ((3, 0), (1, 2))}
_SADDLE_HIGH = {5: ((0, 3), (2, 1)), 10: ((1, 0), (3, 2))}


def cell_segments(case: int, center_low: bool) -> tuple[tuple[int, int], ...]:
    """Oriented contour segments for one marching-squares cell case.

    ``center_low`` resolves the two saddle cases: it states whether the
    cell's average value lies below iso.
    """
    if case in (5, 10):
        return (_SADDLE_LOW if center_low else _SADDLE_HIGH)[case]
    return _SEGMENTS.get(case, ())


def _edge_point(
    edge: int,
    x0: float,
    x1: float,
    y0: float,
    y1: float,
    va: float,
    vb: float,
    vc: float,
    vd: float,
    iso: float,
) -> tuple[float, float]:
    # Interpolation runs south a->b, east b->c, north d->c, west a->d, i.e.
    # always from the lower lattice index, so shared edges agree bitwise.
    if edge == 0:
        s = (iso - va) / (vb - va)
        return (x0 + s * (x1 - x0), y0)
    if edge == 1:
        s = (iso - vb) / (vc - vb)
        return (x1, y0 + s * (y1 - y0))
    if edge == 2:
        s = (iso - vd) / (vc - vd)
        return (x0 + s * (x1 - x0), y1)
    s = (iso - va) / (vd - va)
    return (x0, y0 + s * (y1 - y0))


def extract_isocontour(grid: ScalarGrid2D, iso: float = 1.0) -> Contour:
    """March the level set ``value = iso`` out of a 2D grid.

    Cells touching holes are skipped.  Returns open and closed polylines;
    an empty contour is valid output.
    """
    values = grid.values
    xs, ys = grid.xs(), grid.ys()
    segments: list[tuple[tuple[float, float], tuple[float, float]]] = []
    for j in range(grid.ny - 1):
        y0, y1 = float(ys[j]), float(ys[j + 1])
        row0, row1 = values[j], values[j + 1]
        for i in range(grid.nx - 1):
            va, vb = float(row0[i]), float(row0[i + 1])
            vd, vc = float(row1[i]), float(row1[i + 1])
            if not (
                math.isfinite(va)
                and math.isfinite(vb)
                and math.isfinite(vc)
                and math.isfinite(vd)
            ):
                continue
            case = (
                (1 if va < iso else 0)
                | (2 if vb < iso else 0)
                | (4 if vc < iso else 0)
                | (8 if vd < iso else 0)
            )
            if case in (0, 15):
                continue
            center_low = ((va + vb) + (vc + vd)) / 4.0 < iso
            x0, x1 = float(xs[i]), float(xs[i + 1])
            for efrom, eto in cell_segments(case, center_low):
                p = _edge_point(efrom, x0, x1, y0, y1, va, vb, vc, vd, iso)
                q = _edge_point(eto, x0, x1, y0, y1, va, vb, vc, vd, iso)
                if p != q:  # node-exact values can pinch a chord to a point
                    segments.append((p, q))
    return _chain_segments(segments)


def _chain_segments(
    segments: Sequence[tuple[tuple[float, float], tuple[float, float]]]
) -> Contour:
    outgoing: dict[tuple[float, float], list[int]] = {}
    incoming: dict[tuple[float, float], int] = {}
    for idx, (p, q) in enumerate(segments):
        outgoing.setdefault(p, []).append(idx)
        incoming[q] = incoming.get(q, 0) + 1

    used = [False] * len(segments)
    polylines: list[np.ndarray] = []
    closed: list[bool] = []

    def next_from(point: tuple[float, float]) -> int | None:
        for idx in outgoing.get(point, ()):
            if not used[idx]:
                return idx
        return None

    def walk(start_idx: int) -> None:
        points = [segments[start_idx][0]]
        idx: int | None = start_idx
        while idx is not None and not used[idx]:
            used[idx] = True
            end = segments[idx][1]
            points.append(end)
            if end == points[0]:
                break
            idx = next_from(end)
        is_closed = len(points) > 1 and points[-1] == points[0]
        if is_closed:
            points.pop()
        polylines.append(np.asarray(points, dtype=np.float64))
        closed.append(is_closed)

    # Open chains first, from their sources; leftovers are cycles.
    for idx in range(len(segments)):
        if not used[idx] and incoming.get(segments[idx][0], 0) == 0:
            walk(idx)
    for idx in range(len(segments)):
        if not used[idx]:
            walk(idx)
    return Contour(tuple(polylines), tuple(closed))


def contour_length(contour: Contour) -> float:
    """Total arc length over all polylines, closing the closed ones."""
    total = 0.0
    for points, is_closed in zip(contour.polylines, contour.closed):
        diffs = np.diff(points, axis=0)
        total += float(np.sqrt((diffs * diffs).sum(axis=1)).sum())
        if is_closed:
            total += float(np.linalg.norm(points[0] - points[-1]))
    return total


# --- marching cubes --------------------------------------------------------

# Cube corners are numbered by bits (x -> 1, y -> 2, z -> 4).  The twelve
# lattice edges are listed axis-major; interpolation runs from the lower
# corner to the higher one.
_CUBE_EDGES: tuple[tuple[int, int], ...] = (
    (0, 1), (2, 3), (4, 5), (6, 7),  # x-aligned: ids 0..3
    (0, 2), (1, 3), (4, 6), (5, 7),  # y-aligned: ids 4..7
    (0, 4), (1, 5), (2, 6), (3, 7),  # z-aligned: ids 8..11
)

# Each face as (a, b, c, d) corners of a right-handed frame whose normal
# points out of the cube, plus its south/east/north/west edge ids in that
# frame.  Applying the 2D cell rule in these frames orients every face
# loop consistently, and neighbouring cubes see mirrored frames on their
# shared face, so the chord topology matches and the mesh closes.
_FACES: tuple[tuple[tuple[int, int, int, int], tuple[int, int, int, int]], ...] = (
    ((0, 4, 6, 2), (8, 6, 10, 4)),   # x = 0
    ((1, 3, 7, 5), (5, 11, 7, 9)),   # x = 1
    ((0, 1, 5, 4), (0, 9, 2, 8)),    # y = 0
    ((2, 6, 7, 3), (10, 3, 11, 1)),  # y = 1
    ((0, 2, 3, 1), (4, 1, 5, 0)),    # z = 0
    ((4, 5, 7, 6), (2, 7, 3, 6)),    # z = 1
)

_AMBIGUOUS_MASK: list[int] = []
for _case in range(256):
    _mask = 0
    for _f, ((_a, _b, _c, _d), _) in enumerate(_FACES):
        _bits = (
            (1 if _case >> _a & 1 else 0)
            | (2 if _case >> _b & 1 else 0)
            | (4 if _case >> _c & 1 else 0)
            | (8 if _case >> _d & 1 else 0)
        )
        if _bits in (5, 10):
            _mask |= 1 << _f
    _AMBIGUOUS_MASK.append(_mask)

_TRIANGLE_TABLE: dict[int, tuple[tuple[int, int, int], ...]] = {}


def _cube_triangulation(case: int, facebits: int) -> tuple[tuple[int, int, int], ...]:
    """Triangles (as edge-id triples) for one cube configuration.

    ``facebits`` carries, for each ambiguous face, whether the face average
    is below iso.  Built on demand and cached; construction traces the
    face segments into closed loops and fans each loop.
    """
    key = (case << 6) | (facebits & _AMBIGUOUS_MASK[case])
    cached = _TRIANGLE_TABLE.get(key)
    if cached is not None:
        return cached

    successor: dict[int, int] = {}
    for f, ((a, b, c, d), (es, ee, en, ew)) in enumerate(_FACES):
        bits = (
            (1 if case >> a & 1 else 0)
            | (2 if case >> b & 1 else 0)
            | (4 if case >> c & 1 else 0)
            | (8 if case >> d & 1 else 0)
        )
        local = (es, ee, en, ew)
        for efrom, eto in cell_segments(bits, bool(facebits >> f & 1)):
            start = local[efrom]
            assert start not in successor
            successor[start] = local[eto]

    triangles: list[tuple[int, int, int]] = []
    while successor:
        start = min(successor)
        loop = [start]
        nxt = successor.pop(start)
        while nxt != start:
            loop.append(nxt)
            nxt = successor.pop(nxt)
        # The face rule keeps low values on the left over an outward frame,
        # which winds loops with normals toward the low side; reverse so
        # normals run from low values to high values.
        loop.reverse()
        for k in range(1, len(loop) - 1):
            triangles.append((loop[0], loop[k], loop[k + 1]))

    result = tuple(triangles)
    _TRIANGLE_TABLE[key] = result
    return result


def extract_isosurface(grid: ScalarGrid3D, iso: float = 1.0) -> Mesh:
    """March the isosurface ``value = iso`` out of a 3D grid.

    Vertices are deduplicated per lattice edge, triangles wind so normals
    point toward values above iso.  Raises :class:`EmptyMeshError` when
    the level set misses the grid entirely.
    """
    values = grid.values
    nx, ny, nz = grid.nx, grid.ny, grid.nz
    inside = np.zeros(values.shape, dtype=np.uint8)
    finite = np.isfinite(values)
    np.less(values, iso, where=finite, out=inside.view(bool))

    case = (
        inside[:-1, :-1, :-1].astype(np.int32)
        | inside[:-1, :-1, 1:].astype(np.int32) << 1
        | inside[:-1, 1:, :-1].astype(np.int32) << 2
        | inside[:-1, 1:, 1:].astype(np.int32) << 3
        | inside[1:, :-1, :-1].astype(np.int32) << 4
        | inside[1:, :-1, 1:].astype(np.int32) << 5
        | inside[1:, 1:, :-1].astype(np.int32) << 6
        | inside[1:, 1:, 1:].astype(np.int32) << 7
    )
    whole = (
        finite[:-1, :-1, :-1] & finite[:-1, :-1, 1:]
        & finite[:-1, 1:, :-1] & finite[:-1, 1:, 1:]
        & finite[1:, :-1, :-1] & finite[1:, :-1, 1:]
        & finite[1:, 1:, :-1] & finite[1:, 1:, 1:]
    )
    active = np.nonzero((case != 0) & (case != 255) & whole)

    xs, ys, zs = grid.xs(), grid.ys(), grid.zs()
    nex = (nx - 1) * ny * nz  # x-edge block size, then y block
    ney = nx * (ny - 1) * nz

    def edge_vertex_id(axis: int, i: int, j: int, k: int) -> int:
        if axis == 0:
            return (k * ny + j) * (nx - 1) + i
        if axis == 1:
            return nex + (k * (ny - 1) + j) * nx + i
        return nex + ney + (k * ny + j) * nx + i

    edge_to_vertex: dict[int, int] = {}
    vertices: list[tuple[float, float, float]] = []
    triangles: list[tuple[int, int, int]] = []

    for k, j, i in zip(*(idx.tolist() for idx in active)):
        v = (
            float(values[k, j, i]),
            float(values[k, j, i + 1]),
            float(values[k, j + 1, i]),
            float(values[k, j + 1, i + 1]),
            float(values[k + 1, j, i]),
            float(values[k + 1, j, i + 1]),
            float(values[k + 1, j + 1, i]),
            float(values[k + 1, j + 1, i + 1]),
        )
        cube_case = int(case[k, j, i])
        facebits = 0
        mask = _AMBIGUOUS_MASK[cube_case]
        if mask:
            for f, ((a, b, c, d), _) in enumerate(_FACES):
                if mask >> f & 1:
                    s0, s1, s2, s3 = sorted((a, b, c, d))
                    # Canonical corner order keeps the average bit-equal in
                    # the two cubes sharing this face.
                    avg = ((v[s0] + v[s1]) + (v[s2] + v[s3])) / 4.0
                    if avg < iso:
                        facebits |= 1 << f

        for e0, e1, e2 in _cube_triangulation(cube_case, facebits):
            tri = []
            for edge in (e0, e1, e2):
                lo, hi = _CUBE_EDGES[edge]
                axis = edge >> 2
                ei = i + (lo & 1)
                ej = j + (lo >> 1 & 1)
                ek = k + (lo >> 2 & 1)
                gid = edge_vertex_id(axis, ei, ej, ek)
                vid = edge_to_vertex.get(gid)
                if vid is None:
                    s = (iso - v[lo]) / (v[hi] - v[lo])
                    if axis == 0:
                        px = xs[ei] + s * (xs[ei + 1] - xs[ei])
                        py, pz = ys[ej], zs[ek]
                    elif axis == 1:
                        px, pz = xs[ei], zs[ek]
                        py = ys[ej] + s * (ys[ej + 1] - ys[ej])
                    else:
                        px, py = xs[ei], ys[ej]
                        pz = zs[ek] + s * (zs[ek + 1] - zs[ek])
                    vid = len(vertices)
                    vertices.append((float(px), float(py), float(pz)))
                    edge_to_vertex[gid] = vid
                tri.append(vid)
            if tri[0] != tri[1] and tri[1] != tri[2] and tri[0] != tri[2]:
                triangles.append((tri[0], tri[1], tri[2]))

    if not triangles:
        raise EmptyMeshError("the iso level does not intersect the sampled field")
    return Mesh(
        np.asarray(vertices, dtype=np.float64),
        np.asarray(triangles, dtype=np.int32),
    )


def mesh_area(mesh: Mesh) -> float:
    """Total triangle area."""
    pts = mesh.vertices
    tris = mesh.triangles
    u = pts[tris[:, 1]] - pts[tris[:, 0]]
    w = pts[tris[:, 2]] - pts[tris[:, 0]]
    cross = np.cross(u, w)
    return float(0.5 * np.sqrt((cross * cross).sum(axis=1)).sum())
