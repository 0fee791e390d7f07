"""Domains, cell specifications, grid sampling, sweeps and membership."""

import math

import numpy as np
import pytest

from morphocell.dsl import evaluate, parse
from morphocell.errors import TimeError, UnboundParamError
from morphocell.geometry import (
    DEFAULT_RESOLUTION_2D,
    DEFAULT_RESOLUTION_3D,
    Box,
    Disc,
    MembershipResult,
    ScalarGrid2D,
    SquareDomain,
    axis_coordinates,
    heightfield_cell,
    implicit_cell,
    membership,
    membership_detail,
    sample_heightfield,
    sample_volume,
    time_sweep,
)

# --- domains ---------------------------------------------------------------


def test_box_bounds_and_containment():
    box = Box(-2.0, 2.0, -1.0, 1.0, 0.0, 3.0)
    assert box.xy_bounds() == (-2.0, 2.0, -1.0, 1.0)
    assert box.contains(2.0, 1.0, 3.0)  # faces belong to the box
    assert not box.contains(2.0000001, 0.0, 0.0)


@pytest.mark.parametrize(
    "bounds", [(1.0, 1.0, 0.0, 1.0), (0.0, 1.0, 2.0, -2.0), (0.0, 1.0, 0.0, 1.0, 5.0, 5.0)]
)
def test_box_rejects_degenerate_axes(bounds):
    with pytest.raises(ValueError):
        Box(*bounds)


def test_square_domain_bounds():
    assert SquareDomain(4.0).xy_bounds() == (-2.0, 2.0, -2.0, 2.0)
    assert SquareDomain(3.0, centered=False).xy_bounds() == (0.0, 3.0, 0.0, 3.0)
    assert SquareDomain(4.0).contains_xy(2.0, -2.0)
    with pytest.raises(ValueError):
        SquareDomain(0.0)


def test_disc_contains_boundary():
    disc = Disc(10.0)
    assert disc.contains_xy(10.0, 0.0)
    assert disc.contains_xy(6.0, 8.0)
    assert not disc.contains_xy(10.0, 1e-6)
    assert Disc(1.0, cx=5.0, cy=5.0).contains_xy(5.5, 5.0)


# --- cell specifications ---------------------------------------------------


def test_heightfield_cell_rejects_z():
    with pytest.raises(ValueError):
        heightfield_cell("x + z", SquareDomain(2.0))


def test_implicit_cell_needs_box():
    with pytest.raises(ValueError):
        implicit_cell("x^2+y^2+z^2", SquareDomain(2.0))  # type: ignore[arg-type]


def test_cell_params_must_bind():
    with pytest.raises(UnboundParamError):
        heightfield_cell("a*x", SquareDomain(2.0))
    cell = heightfield_cell("a*x", SquareDomain(2.0), {"a": 3.0})
    assert cell.params == {"a": 3.0}


def test_cell_accepts_parsed_tree():
    tree = parse("x^2+y^2")
    assert heightfield_cell(tree, SquareDomain(2.0)).expr is tree


# --- grid coordinates ------------------------------------------------------


def test_axis_coordinates_affine():
    xs = axis_coordinates(-2.0, 2.0, 129)
    assert xs[0] == -2.0
    assert xs[-1] == 2.0
    step = 4.0 / 128.0
    for i in (1, 7, 64, 127):
        assert xs[i] == -2.0 + i * step  # exact: the step is computed once


def test_axis_coordinates_minimum_count():
    with pytest.raises(ValueError):
        axis_coordinates(0.0, 1.0, 1)


def test_grid_coordinate_accessors():
    cell = heightfield_cell("x*y", Box(0.0, 1.0, 10.0, 30.0))
    grid = sample_heightfield(cell, 1.0, 5, 3)
    assert grid.nx == 5 and grid.ny == 3
    assert [grid.x_coordinate(i) for i in range(5)] == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert [grid.y_coordinate(j) for j in range(3)] == [10.0, 20.0, 30.0]
    assert grid.values.shape == (3, 5)
    assert np.array_equal(grid.xs(), [0.0, 0.25, 0.5, 0.75, 1.0])


# --- sampling --------------------------------------------------------------


def test_sampling_matches_pointwise_evaluation():
    cell = heightfield_cell("abs(x*y)^(1/t)", SquareDomain(4.0))
    grid = sample_heightfield(cell, 2.0, 9)
    tree = parse("abs(x*y)^(1/t)")
    for j in range(9):
        for i in range(9):
            want = evaluate(tree, grid.x_coordinate(i), grid.y_coordinate(j), 0.0, 2.0)
            assert grid.values[j, i] == want  # bitwise


def test_sampling_row_major_layout():
    cell = heightfield_cell("x + 10*y", Box(0.0, 2.0, 0.0, 1.0))
    grid = sample_heightfield(cell, 1.0, 3, 2)
    assert grid.values.tolist() == [[0.0, 1.0, 2.0], [10.0, 11.0, 12.0]]


def test_domain_failures_become_holes():
    cell = heightfield_cell("ln(x)", SquareDomain(4.0))
    grid = sample_heightfield(cell, 1.0, 5)
    row = grid.values[0]
    assert np.isnan(row[:3]).all()  # x = -2, -1, 0
    assert np.isfinite(row[3:]).all()
    assert grid.is_hole(0, 0) and not grid.is_hole(4, 0)


def test_overflow_becomes_hole():
    cell = heightfield_cell("exp(x*1000)", SquareDomain(4.0))
    grid = sample_heightfield(cell, 1.0, 5)
    assert np.isnan(grid.values[0, 3:]).all()  # e^1000 and beyond
    assert np.isfinite(grid.values[0, :3]).all()


def test_disc_domain_masks_outside():
    cell = heightfield_cell("x+y", Disc(2.0))
    grid = sample_heightfield(cell, 1.0, 5)
    values = grid.values
    assert math.isnan(values[0, 0])  # corner (-2, -2) lies outside
    assert values[2, 4] == 2.0  # (2, 0) on the rim is kept
    assert values[2, 2] == 0.0


def test_singular_value_patch():
    cell = heightfield_cell(
        "-(x^2+y^2)*sin(1/sqrt(x^2+y^2))",
        SquareDomain(4.0),
        singular_values={(0.0, 0.0): 0.0},
    )
    grid = sample_heightfield(cell, 1.0, 9)
    assert grid.values[4, 4] == 0.0
    # Off-center nodes are computed, not patched.
    assert grid.values[4, 5] != 0.0


def test_singular_patch_only_fills_holes():
    cell = heightfield_cell("x*y", SquareDomain(4.0), singular_values={(0.0, 0.0): 99.0})
    grid = sample_heightfield(cell, 1.0, 9)
    assert grid.values[4, 4] == 0.0  # defined value wins over the patch


def test_sample_grid_is_read_only():
    cell = heightfield_cell("x", SquareDomain(2.0))
    grid = sample_heightfield(cell, 1.0, 3)
    with pytest.raises(ValueError):
        grid.values[0, 0] = 5.0


def test_sample_heightfield_time_guard():
    cell = heightfield_cell("abs(x*y)^(1/t)", SquareDomain(4.0))
    with pytest.raises(TimeError):
        sample_heightfield(cell, 0.0, 5)
    steady = heightfield_cell("x*y", SquareDomain(4.0))
    grid = sample_heightfield(steady, -1.0, 5)  # steady cells ignore t
    assert grid.t == -1.0


def test_sample_heightfield_default_resolution():
    cell = heightfield_cell("x", SquareDomain(2.0))
    grid = sample_heightfield(cell)
    assert grid.nx == grid.ny == DEFAULT_RESOLUTION_2D


def test_sample_volume_matches_evaluation():
    cell = implicit_cell("x^2+y^2+z^2", Box(-1.0, 1.0, -1.0, 1.0, -1.0, 1.0))
    grid = sample_volume(cell, 1.0, 5)
    assert grid.values.shape == (5, 5, 5)
    tree = parse("x^2+y^2+z^2")
    for k in (0, 2, 4):
        for j in (1, 3):
            for i in (0, 2):
                want = evaluate(
                    tree,
                    grid.x_coordinate(i),
                    grid.y_coordinate(j),
                    grid.z_coordinate(k),
                )
                assert grid.values[k, j, i] == want


def test_sample_volume_default_resolution():
    cell = implicit_cell("x", Box(-1.0, 1.0, -1.0, 1.0, -1.0, 1.0))
    grid = sample_volume(cell)
    assert grid.nx == grid.ny == grid.nz == DEFAULT_RESOLUTION_3D


def test_grid_json_uses_nulls_for_holes():
    cell = heightfield_cell("ln(x)", Box(-1.0, 1.0, 0.0, 1.0))
    grid = sample_heightfield(cell, 1.0, 3, 2)
    body = grid.to_json_dict()
    assert body["type"] == "grid"
    assert body["counts"] == [3, 2]
    assert body["values"][0] is None  # ln(-1)
    assert body["values"][2] == 0.0  # ln(1), x fastest
    assert len(body["values"]) == 6


# --- time sweeps -----------------------------------------------------------


def test_time_sweep_linear_instants():
    cell = heightfield_cell("x*t", SquareDomain(2.0))
    grids = time_sweep(cell, 1.0, 3.0, steps=5, resolution=3)
    assert [g.t for g in grids] == [1.0, 1.5, 2.0, 2.5, 3.0]
    assert all(isinstance(g, ScalarGrid2D) for g in grids)


def test_time_sweep_single_step():
    cell = heightfield_cell("x*t", SquareDomain(2.0))
    grids = time_sweep(cell, 2.0, 2.0, steps=1, resolution=3)
    assert [g.t for g in grids] == [2.0]


def test_time_sweep_explicit_times():
    cell = heightfield_cell("abs(x*y)^(1/t)", SquareDomain(4.0))
    grids = time_sweep(cell, times=[1.0, 2.0, 4.0], resolution=9)
    assert [g.t for g in grids] == [1.0, 2.0, 4.0]
    node = [g.values[5, 5] for g in grids]  # (0.5, 0.5), so |xy| = 1/4
    assert node[0] < node[1] < node[2]


def test_time_sweep_rejects_bad_ranges():
    cell = heightfield_cell("x*t", SquareDomain(2.0))
    with pytest.raises(TimeError):
        time_sweep(cell, 0.0, 1.0, steps=2, resolution=3)
    with pytest.raises(TimeError):
        time_sweep(cell, 2.0, 1.0, steps=2, resolution=3)
    with pytest.raises(ValueError):
        time_sweep(cell, 1.0, 2.0, steps=0, resolution=3)


def test_time_sweep_volume():
    cell = implicit_cell("x^2+y^2+z^2-t", Box(-1.0, 1.0, -1.0, 1.0, -1.0, 1.0))
    grids = time_sweep(cell, 1.0, 2.0, steps=2, resolution=5)
    assert [g.t for g in grids] == [1.0, 2.0]
    assert grids[0].values.shape == (5, 5, 5)


# --- membership ------------------------------------------------------------


UNIT_BALL = implicit_cell("x^2+y^2+z^2", Box(-2.0, 2.0, -2.0, 2.0, -2.0, 2.0))


def test_membership_boundary_is_inclusive():
    assert membership(UNIT_BALL, (1.0, 0.0, 0.0))
    assert membership(UNIT_BALL, (0.0, 0.0, 0.0))
    assert not membership(UNIT_BALL, (1.0000001, 0.0, 0.0))


def test_membership_outside_domain():
    detail = membership_detail(UNIT_BALL, (3.0, 0.0, 0.0))
    assert detail == MembershipResult(False, False, None, False)


def test_membership_reports_value():
    detail = membership_detail(UNIT_BALL, (0.5, 0.5, 0.0))
    assert detail.member and detail.inside_domain
    assert detail.value == 0.5
    assert not detail.domain_error


def test_membership_domain_error_flag():
    cell = implicit_cell("ln(x)", Box(-2.0, 2.0, -2.0, 2.0, -2.0, 2.0))
    detail = membership_detail(cell, (-1.0, 0.0, 0.0))
    assert detail == MembershipResult(False, True, None, True)
    assert not membership(cell, (-1.0, 0.0, 0.0))


def test_membership_respects_iso():
    cell = implicit_cell(
        "x^2+y^2+z^2", Box(-3.0, 3.0, -3.0, 3.0, -3.0, 3.0), iso=4.0
    )
    assert membership(cell, (2.0, 0.0, 0.0))
    assert not membership(cell, (2.1, 0.0, 0.0))


def test_membership_time_dependent():
    cell = implicit_cell("(x^2+y^2+z^2)/t", Box(-2.0, 2.0, -2.0, 2.0, -2.0, 2.0))
    assert not membership(cell, (1.2, 0.0, 0.0), t=1.0)
    assert membership(cell, (1.2, 0.0, 0.0), t=2.0)
    with pytest.raises(TimeError):
        membership(cell, (0.0, 0.0, 0.0), t=0.0)


def test_membership_requires_implicit_cell():
    with pytest.raises(ValueError):
        membership(heightfield_cell("x", SquareDomain(2.0)), (0.0, 0.0, 0.0))
