"""Meshing: height-field lift, marching squares, marching cubes, validation."""

import math
from collections import Counter

import numpy as np
import pytest

from morphocell.errors import EmptyMeshError, TimeError
from morphocell.geometry import (
    Box,
    Disc,
    ScalarGrid2D,
    ScalarGrid3D,
    SquareDomain,
    heightfield_cell,
    implicit_cell,
    sample_heightfield,
    sample_volume,
)
from morphocell.mesher import (
    Contour,
    Mesh,
    cell_segments,
    contour_length,
    extract_isocontour,
    extract_isosurface,
    mesh_area,
    triangulate_disc,
    triangulate_heightfield,
    validate_mesh,
)


def grid2(values, bounds=(0.0, 1.0, 0.0, 1.0), t=1.0) -> ScalarGrid2D:
    array = np.asarray(values, dtype=np.float64)
    ny, nx = array.shape
    return ScalarGrid2D(nx, ny, *bounds, t, array)


def grid3(values, bounds=(0.0, 1.0, 0.0, 1.0, 0.0, 1.0), t=1.0) -> ScalarGrid3D:
    array = np.asarray(values, dtype=np.float64)
    nz, ny, nx = array.shape
    return ScalarGrid3D(nx, ny, nz, *bounds, t, array)


# --- validate_mesh ---------------------------------------------------------


def test_validate_accepts_single_triangle():
    mesh = Mesh(
        np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        np.array([[0, 1, 2]], dtype=np.int32),
    )
    report = validate_mesh(mesh)
    assert report.ok
    assert report.boundary_edges == 3
    assert report.nonmanifold_edges == 0


def test_validate_flags_bad_indices():
    mesh = Mesh(np.zeros((2, 3)), np.array([[0, 1, 5]], dtype=np.int32))
    assert not validate_mesh(mesh).ok


def test_validate_flags_nonfinite_vertices():
    mesh = Mesh(
        np.array([[0.0, 0.0, math.nan], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        np.array([[0, 1, 2]], dtype=np.int32),
    )
    assert "non-finite vertex coordinate" in validate_mesh(mesh).violations


def test_validate_flags_degenerate_triangles():
    mesh = Mesh(np.zeros((3, 3)), np.array([[0, 0, 2]], dtype=np.int32))
    assert any("repeat" in v for v in validate_mesh(mesh).violations)


def test_validate_counts_nonmanifold_edges():
    vertices = np.array(
        [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, -1, 0]], dtype=np.float64
    )
    triangles = np.array([[0, 1, 2], [0, 1, 3], [0, 1, 4]], dtype=np.int32)
    report = validate_mesh(Mesh(vertices, triangles))
    assert report.nonmanifold_edges == 1


def test_mesh_area_single_triangle():
    mesh = Mesh(
        np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]),
        np.array([[0, 1, 2]], dtype=np.int32),
    )
    assert mesh_area(mesh) == 0.5


# --- height-field triangulation -------------------------------------------


def test_heightfield_full_grid_counts():
    cell = heightfield_cell("x*y", SquareDomain(4.0))
    mesh = triangulate_heightfield(sample_heightfield(cell, 1.0, 9))
    assert mesh.vertex_count == 81
    assert mesh.triangle_count == 2 * 8 * 8
    assert validate_mesh(mesh).ok


def test_heightfield_vertices_carry_exact_samples():
    cell = heightfield_cell("x + 2*y", Box(0.0, 1.0, 0.0, 1.0))
    grid = sample_heightfield(cell, 1.0, 5)
    mesh = triangulate_heightfield(grid)
    for x, y, z in mesh.vertices.tolist():
        assert z == x + 2.0 * y  # linear data survives bit-exactly


def test_heightfield_winding_faces_up():
    cell = heightfield_cell("0*x", SquareDomain(2.0))
    mesh = triangulate_heightfield(sample_heightfield(cell, 1.0, 4))
    pts = mesh.vertices
    for a, b, c in mesh.triangles.tolist():
        cross_z = np.cross(pts[b] - pts[a], pts[c] - pts[a])[2]
        assert cross_z > 0


def test_heightfield_drops_hole_cells():
    values = np.ones((4, 4))
    values[0, 0] = math.nan
    mesh = triangulate_heightfield(grid2(values))
    assert mesh.triangle_count == 2 * 9 - 2
    assert mesh.vertex_count == 15
    assert validate_mesh(mesh).ok


def test_heightfield_center_hole_three_by_three():
    values = np.ones((3, 3))
    values[1, 1] = math.nan
    with pytest.raises(EmptyMeshError):
        triangulate_heightfield(grid2(values))


def test_heightfield_all_holes():
    with pytest.raises(EmptyMeshError):
        triangulate_heightfield(grid2(np.full((3, 3), math.nan)))


# --- polar disc triangulation ----------------------------------------------


DOME = heightfield_cell("H - b*(x^2+y^2)", Disc(10.0), {"H": 10.0, "b": 0.1})


def test_disc_mesh_structure():
    mesh = triangulate_disc(DOME, 1.0, rings=5, sectors=12)
    assert mesh.vertex_count == 1 + 4 * 12
    assert mesh.triangle_count == 12 + 2 * 12 * 3
    report = validate_mesh(mesh)
    assert report.ok
    assert report.boundary_edges == 12  # the rim only
    assert report.nonmanifold_edges == 0


def test_disc_mesh_rim_on_circle():
    mesh = triangulate_disc(DOME, 1.0, rings=5, sectors=12)
    rim = mesh.vertices[-12:]
    radii = np.hypot(rim[:, 0], rim[:, 1])
    assert np.allclose(radii, 10.0, rtol=0.0, atol=1e-12)
    assert np.abs(rim[:, 2]).max() < 1e-9


def test_disc_mesh_center_value():
    mesh = triangulate_disc(DOME, 1.0, rings=5, sectors=12)
    assert mesh.vertices[0].tolist() == [0.0, 0.0, 10.0]


def test_disc_mesh_winding_faces_up():
    flat = heightfield_cell("0*x", Disc(1.0))
    mesh = triangulate_disc(flat, 1.0, rings=3, sectors=8)
    pts = mesh.vertices
    for a, b, c in mesh.triangles.tolist():
        assert np.cross(pts[b] - pts[a], pts[c] - pts[a])[2] > 0


def test_disc_mesh_rejects_wrong_cells():
    with pytest.raises(ValueError):
        triangulate_disc(heightfield_cell("x", SquareDomain(2.0)))
    with pytest.raises(TimeError):
        triangulate_disc(heightfield_cell("x*t", Disc(1.0)), 0.0)


# --- marching squares: segment table ---------------------------------------

_CORNER_POS = ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))  # a, b, c, d
_EDGE_MID = {0: (0.5, 0.0), 1: (1.0, 0.5), 2: (0.5, 1.0), 3: (0.0, 0.5)}
_EDGE_CORNERS = {0: (0, 1), 1: (1, 2), 2: (3, 2), 3: (0, 3)}


def _corner_inside(case: int, corner: int) -> bool:
    return bool(case >> corner & 1)


@pytest.mark.parametrize("case", range(16))
@pytest.mark.parametrize("center_low", [False, True])
def test_segment_table_pairs_crossed_edges(case, center_low):
    crossed = {
        e
        for e, (c0, c1) in _EDGE_CORNERS.items()
        if _corner_inside(case, c0) != _corner_inside(case, c1)
    }
    endpoints = [e for seg in cell_segments(case, center_low) for e in seg]
    assert sorted(endpoints) == sorted(crossed)  # each crossed edge used once


@pytest.mark.parametrize("case", range(16))
@pytest.mark.parametrize("center_low", [False, True])
def test_segment_table_keeps_inside_on_left(case, center_low):
    for efrom, eto in cell_segments(case, center_low):
        px, py = _EDGE_MID[efrom]
        qx, qy = _EDGE_MID[eto]
        adjacent = set(_EDGE_CORNERS[efrom]) | set(_EDGE_CORNERS[eto])
        for corner in adjacent:
            cx, cy = _CORNER_POS[corner]
            cross = (qx - px) * (cy - py) - (qy - py) * (cx - px)
            if _corner_inside(case, corner):
                assert cross > 0, (case, center_low, (efrom, eto), corner)
            else:
                assert cross < 0, (case, center_low, (efrom, eto), corner)


# --- marching squares: extraction ------------------------------------------


def test_contour_linear_field_is_exact():
    cell = heightfield_cell("x", SquareDomain(4.0))
    contour = extract_isocontour(sample_heightfield(cell, 1.0, 65), 0.0)
    assert len(contour.polylines) == 1
    assert contour.closed == (False,)
    points = contour.polylines[0]
    assert np.all(points[:, 0] == 0.0)
    assert contour_length(contour) == 4.0


def test_contour_circle_closed_and_oriented():
    cell = heightfield_cell("x^2+y^2", SquareDomain(4.0))
    contour = extract_isocontour(sample_heightfield(cell, 1.0, 65), 1.0)
    assert len(contour.polylines) == 1
    assert contour.closed == (True,)
    points = contour.polylines[0]
    # Inside (low values) on the left means counterclockwise: positive area.
    x, y = points[:, 0], points[:, 1]
    area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    assert area > 0
    assert abs(area - math.pi) / math.pi < 0.01
    length = contour_length(contour)
    assert abs(length - 2.0 * math.pi) / (2.0 * math.pi) < 0.01


def test_contour_two_components():
    cell = heightfield_cell(
        "min((x-1)^2+y^2, (x+1)^2+y^2)", SquareDomain(4.0)
    )
    contour = extract_isocontour(sample_heightfield(cell, 1.0, 129), 0.25)
    assert len(contour.polylines) == 2
    assert contour.closed == (True, True)


def test_contour_open_chain_hits_grid_border():
    cell = heightfield_cell("y - x", SquareDomain(2.0))
    contour = extract_isocontour(sample_heightfield(cell, 1.0, 17), 0.0)
    assert contour.closed == (False,)
    line = contour.polylines[0]
    assert abs(contour_length(contour) - 2.0 * math.sqrt(2.0)) < 1e-9
    for x, y in line.tolist():
        assert abs(y - x) < 1e-12


def test_contour_saddle_center_high():
    values = [[0.0, 1.0], [1.0, 0.0]]  # average 0.5, iso below it
    contour = extract_isocontour(grid2(values), 0.4)
    assert len(contour.polylines) == 2
    assert contour.closed == (False, False)
    starts = {tuple(line[0]) for line in contour.polylines}
    ends = {tuple(line[-1]) for line in contour.polylines}
    # Center high: the two inside corners a and c stay separated.
    assert (0.4, 0.0) in starts and (0.0, 0.4) in ends
    assert (0.6, 1.0) in starts and (1.0, 0.6) in ends


def test_contour_saddle_center_low():
    values = [[0.0, 1.0], [1.0, 0.0]]  # average 0.5, iso above it
    contour = extract_isocontour(grid2(values), 0.6)
    assert len(contour.polylines) == 2
    starts = {tuple(line[0]) for line in contour.polylines}
    ends = {tuple(line[-1]) for line in contour.polylines}
    # Center low: the contour wraps the two outside corners b and d.
    assert (0.6, 0.0) in starts and (1.0, 0.4) in ends
    assert (0.4, 1.0) in starts and (0.0, 0.6) in ends


def test_contour_skips_hole_cells():
    values = np.zeros((3, 3))
    values[1, 1] = math.nan
    values[:, 2] = 2.0
    contour = extract_isocontour(grid2(values), 1.0)
    # Crossings exist in the right column cells, but both touch the hole.
    assert contour.polylines == ()


def test_contour_empty_when_level_missed():
    cell = heightfield_cell("x^2+y^2", SquareDomain(4.0))
    contour = extract_isocontour(sample_heightfield(cell, 1.0, 17), 100.0)
    assert contour.polylines == ()
    assert contour_length(contour) == 0.0


def test_contour_shared_edges_bitwise_consistent():
    # The same lattice edge reached from both neighbouring cells must yield
    # one chained point, never a near-duplicate pair.
    cell = heightfield_cell("x^2+y^2", SquareDomain(4.0))
    contour = extract_isocontour(sample_heightfield(cell, 1.0, 33), 1.3)
    assert len(contour.polylines) == 1 and contour.closed[0]


# --- marching cubes --------------------------------------------------------


def _cube_grid(case: int, outside: float) -> ScalarGrid3D:
    values = np.empty((2, 2, 2))
    for corner in range(8):
        i, j, k = corner & 1, corner >> 1 & 1, corner >> 2 & 1
        values[k, j, i] = 0.0 if case >> corner & 1 else outside
    return grid3(values)


@pytest.mark.parametrize("outside", [2.0, 1.5])  # saddle faces high and low
def test_isosurface_all_256_cases(outside):
    for case in range(1, 255):
        mesh = extract_isosurface(_cube_grid(case, outside), 1.0)
        report = validate_mesh(mesh)
        assert report.ok, (case, report.violations)
        assert report.nonmanifold_edges == 0, case
        directed = Counter()
        for a, b, c in mesh.triangles.tolist():
            for u, v in ((a, b), (b, c), (c, a)):
                directed[(u, v)] += 1
        # Consistent orientation: no directed edge repeats.
        assert max(directed.values()) == 1, case


def test_isosurface_complement_symmetry():
    # Swapping inside and outside mirrors the surface, provided no face is
    # ambiguous (saddle resolution is deliberately asymmetric there).
    from morphocell.mesher import _AMBIGUOUS_MASK

    for case in range(1, 128):
        if _AMBIGUOUS_MASK[case]:
            continue
        mesh = extract_isosurface(_cube_grid(case, 2.0), 1.0)
        twin = extract_isosurface(_cube_grid(255 - case, 2.0), 1.0)
        assert mesh.triangle_count == twin.triangle_count, case
        # Midpoint crossings are their own mirror image, so the vertex sets
        # coincide; fan anchoring may differ, so areas are not compared.
        ours = sorted(map(tuple, mesh.vertices.tolist()))
        theirs = sorted(map(tuple, twin.vertices.tolist()))
        assert ours == theirs, case


def test_isosurface_single_corner_triangle():
    mesh = extract_isosurface(_cube_grid(1, 2.0), 1.0)
    assert mesh.triangle_count == 1
    a, b, c = mesh.triangles[0].tolist()
    pts = mesh.vertices
    normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
    # Inside (low) corner is the origin; the normal must point away from it.
    assert float(normal @ (pts[[a, b, c]].mean(axis=0) - 0.0)) > 0


def test_isosurface_face_case_two_triangles():
    # Corners 0,1,2,3 form the z=0 face.
    mesh = extract_isosurface(_cube_grid(0b00001111, 2.0), 1.0)
    assert mesh.triangle_count == 2
    assert np.allclose(mesh.vertices[:, 2], 0.5)


def test_isosurface_empty_level():
    cell = implicit_cell("x^2+y^2+z^2", Box(-2.0, 2.0, -2.0, 2.0, -2.0, 2.0))
    with pytest.raises(EmptyMeshError):
        extract_isosurface(sample_volume(cell, 1.0, 9), -1.0)


def test_isosurface_plane_is_exact():
    cell = implicit_cell("x", Box(-2.0, 2.0, -2.0, 2.0, -2.0, 2.0))
    mesh = extract_isosurface(sample_volume(cell, 1.0, 17), 0.0)
    assert np.all(mesh.vertices[:, 0] == 0.0)
    assert abs(mesh_area(mesh) - 16.0) < 1e-12
    assert validate_mesh(mesh).ok


def test_isosurface_sphere_metrics():
    cell = implicit_cell("x^2+y^2+z^2", Box(-1.5, 1.5, -1.5, 1.5, -1.5, 1.5))
    mesh = extract_isosurface(sample_volume(cell, 1.0, 33), 1.0)
    report = validate_mesh(mesh)
    assert report.ok
    assert report.boundary_edges == 0  # closed surface
    assert report.nonmanifold_edges == 0
    area = mesh_area(mesh)
    assert abs(area - 4.0 * math.pi) / (4.0 * math.pi) < 0.02
    # Euler characteristic of a sphere: V - E + F = 2.
    edges = {
        (min(u, v), max(u, v))
        for tri in mesh.triangles.tolist()
        for u, v in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))
    }
    assert mesh.vertex_count - len(edges) + mesh.triangle_count == 2


def test_isosurface_sphere_normals_point_outward():
    cell = implicit_cell("x^2+y^2+z^2", Box(-1.5, 1.5, -1.5, 1.5, -1.5, 1.5))
    mesh = extract_isosurface(sample_volume(cell, 1.0, 17), 1.0)
    pts = mesh.vertices
    for a, b, c in mesh.triangles.tolist():
        normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        centroid = (pts[a] + pts[b] + pts[c]) / 3.0
        assert float(normal @ centroid) > 0  # low inside, normals outward


def test_isosurface_torus_area_and_genus():
    cell = implicit_cell(
        "(sqrt(x^2+y^2) - 1)^2 + z^2",
        Box(-1.5, 1.5, -1.5, 1.5, -0.5, 0.5),
    )
    mesh = extract_isosurface(sample_volume(cell, 1.0, 49, 49, 17), 0.09)
    report = validate_mesh(mesh)
    assert report.ok
    assert report.boundary_edges == 0
    exact = 4.0 * math.pi**2 * 1.0 * 0.3  # 4 pi^2 R r
    assert abs(mesh_area(mesh) - exact) / exact < 0.02
    edges = {
        (min(u, v), max(u, v))
        for tri in mesh.triangles.tolist()
        for u, v in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))
    }
    assert mesh.vertex_count - len(edges) + mesh.triangle_count == 0


def test_isosurface_random_binary_field_watertight():
    rng = np.random.default_rng(20240811)
    values = rng.choice([-1.0, 2.0], size=(9, 9, 9))
    grid = grid3(values)
    mesh = extract_isosurface(grid, 1.0)
    report = validate_mesh(mesh)
    assert report.ok
    assert report.nonmanifold_edges == 0
    # Any boundary edge must lie on the grid's bounding box; an interior
    # boundary edge would mean neighbouring cubes disagree on a face.
    edge_count: Counter = Counter()
    for a, b, c in mesh.triangles.tolist():
        for u, v in ((a, b), (b, c), (c, a)):
            edge_count[(min(u, v), max(u, v))] += 1
    def on_box(p):
        return any(p[axis] in (0.0, 1.0) for axis in range(3))
    for (u, v), count in edge_count.items():
        if count == 1:
            assert on_box(mesh.vertices[u]) and on_box(mesh.vertices[v])


def test_isosurface_convergence():
    cell = implicit_cell("x^2+y^2+z^2", Box(-1.5, 1.5, -1.5, 1.5, -1.5, 1.5))
    errors = []
    for resolution in (9, 17, 33):
        mesh = extract_isosurface(sample_volume(cell, 1.0, resolution), 1.0)
        errors.append(abs(mesh_area(mesh) - 4.0 * math.pi))
    assert errors[0] > errors[1] > errors[2]


def test_isosurface_time_dependent():
    cell = implicit_cell(
        "(x^2+y^2+z^2)/t", Box(-2.0, 2.0, -2.0, 2.0, -2.0, 2.0)
    )
    small = mesh_area(extract_isosurface(sample_volume(cell, 1.0, 33), 1.0))
    large = mesh_area(extract_isosurface(sample_volume(cell, 2.0, 33), 1.0))
    assert large > small
