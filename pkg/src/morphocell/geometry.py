"""Cells and their discretization into scalar grids.

A cell couples an expression with a spatial domain: either an implicit
region (points where ``f(x,y,z;t) <= iso``) or a height field
(``z = g(x,y;t)`` over a planar domain).  Sampling produces regular grids
whose nodes sit at ``min + i*step`` with ``step = (max - min)/(n - 1)``,
so power-of-two-plus-one resolutions place a node exactly at the center of
a symmetric domain.  Grid values are finite floats or NaN holes; holes mark
points outside the domain and points where evaluation is undefined, never
a silent zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Mapping, Sequence, Union

import numpy as np

from . import _kernels
from .dsl import Expr, check_time, compile_program, evaluate, free_params, parse, uses_var
from .errors import DomainError, TimeError, UnboundParamError

DEFAULT_RESOLUTION_2D = 129
DEFAULT_RESOLUTION_3D = 65
MIN_RESOLUTION = 2
MAX_RESOLUTION = 4097

IMPLICIT: Literal["implicit"] = "implicit"
HEIGHTFIELD: Literal["heightfield"] = "heightfield"


# --- spatial domains -------------------------------------------------------


@dataclass(frozen=True)
class Box:
    """Axis-aligned box, the domain of implicit cells.

    Height-field cells may also use a Box; only its x-y face matters then.
    """

    xmin: float
    xmax: float
    ymin: float
    ymax: float
    zmin: float = 0.0
    zmax: float = 1.0

    def __post_init__(self) -> None:
        for lo, hi, axis in (
            (self.xmin, self.xmax, "x"),
            (self.ymin, self.ymax, "y"),
            (self.zmin, self.zmax, "z"),
        ):
            if not lo < hi:
                raise ValueError(f"box {axis} bounds must satisfy min < max")

    def xy_bounds(self) -> tuple[float, float, float, float]:
        return (self.xmin, self.xmax, self.ymin, self.ymax)

    def contains_xy(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def contains(self, x: float, y: float, z: float) -> bool:
        return self.contains_xy(x, y) and self.zmin <= z <= self.zmax


@dataclass(frozen=True)
class SquareDomain:
    """Planar square of edge length ``side``, centered on the origin by default."""

    side: float
    centered: bool = True

    def __post_init__(self) -> None:
        if not self.side > 0:
            raise ValueError("square side must be positive")

    def xy_bounds(self) -> tuple[float, float, float, float]:
        if self.centered:
            half = self.side / 2.0
            return (-half, half, -half, half)
        return (0.0, self.side, 0.0, self.side)

    def contains_xy(self, x: float, y: float) -> bool:
        xmin, xmax, ymin, ymax = self.xy_bounds()
        return xmin <= x <= xmax and ymin <= y <= ymax


@dataclass(frozen=True)
class Disc:
    """Planar disc; points strictly outside become grid holes."""

    radius: float
    cx: float = 0.0
    cy: float = 0.0

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ValueError("disc radius must be positive")

    def xy_bounds(self) -> tuple[float, float, float, float]:
        return (
            self.cx - self.radius,
            self.cx + self.radius,
            self.cy - self.radius,
            self.cy + self.radius,
        )

    def contains_xy(self, x: float, y: float) -> bool:
        dx, dy = x - self.cx, y - self.cy
        return dx * dx + dy * dy <= self.radius * self.radius


PlanarDomain = Union[Box, SquareDomain, Disc]
SpatialDomain = PlanarDomain


# --- cell specification ----------------------------------------------------


@dataclass(frozen=True)
class CellSpec:
    """A form definition: expression, kind, domain and parameter bindings.

    ``singular_values`` patches isolated points where the expression is
    undefined but a limit exists; each entry maps exact node coordinates
    ``(x, y)`` to the defined value and applies only where sampling would
    otherwise record a hole.
    """

    kind: Literal["implicit", "heightfield"]
    expr: Expr
    domain: SpatialDomain
    params: Mapping[str, float] = field(default_factory=dict)
    iso: float = 1.0
    singular_values: Mapping[tuple[float, float], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in (IMPLICIT, HEIGHTFIELD):
            raise ValueError(f"unknown cell kind {self.kind!r}")
        if self.kind == HEIGHTFIELD and uses_var(self.expr, "z"):
            raise ValueError("a height-field expression may reference x, y, t only")
        if self.kind == IMPLICIT and not isinstance(self.domain, Box):
            raise ValueError("an implicit cell needs a Box domain")
        for name in sorted(free_params(self.expr)):
            if name not in self.params:
                raise UnboundParamError(name)


def implicit_cell(
    expr: Expr | str,
    domain: Box,
    params: Mapping[str, float] | None = None,
    iso: float = 1.0,
) -> CellSpec:
    if isinstance(expr, str):
        expr = parse(expr)
    return CellSpec(IMPLICIT, expr, domain, dict(params or {}), iso)


def heightfield_cell(
    expr: Expr | str,
    domain: PlanarDomain,
    params: Mapping[str, float] | None = None,
    singular_values: Mapping[tuple[float, float], float] | None = None,
) -> CellSpec:
    if isinstance(expr, str):
        expr = parse(expr)
    return CellSpec(
        HEIGHTFIELD, expr, domain, dict(params or {}), 1.0, dict(singular_values or {})
    )


# --- scalar grids ----------------------------------------------------------


def axis_coordinates(lo: float, hi: float, n: int) -> np.ndarray:
    """Node positions ``lo + i*step`` with ``step = (hi - lo)/(n - 1)``."""
    if n < MIN_RESOLUTION:
        raise ValueError(f"axis needs at least {MIN_RESOLUTION} samples, got {n}")
    step = (hi - lo) / (n - 1)
    return np.array([lo + i * step for i in range(n)], dtype=np.float64)


@dataclass(frozen=True)
class ScalarGrid2D:
    """Field samples over a rectangle at one instant; ``values[j, i]`` is node (i, j)."""

    nx: int
    ny: int
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    t: float
    values: np.ndarray

    def x_coordinate(self, i: int) -> float:
        return self.xmin + i * ((self.xmax - self.xmin) / (self.nx - 1))

    def y_coordinate(self, j: int) -> float:
        return self.ymin + j * ((self.ymax - self.ymin) / (self.ny - 1))

    def xs(self) -> np.ndarray:
        return axis_coordinates(self.xmin, self.xmax, self.nx)

    def ys(self) -> np.ndarray:
        return axis_coordinates(self.ymin, self.ymax, self.ny)

    def is_hole(self, i: int, j: int) -> bool:
        return not math.isfinite(self.values[j, i])

    def to_json_dict(self) -> dict:
        flat = self.values.reshape(-1)
        return {
            "type": "grid",
            "counts": [self.nx, self.ny],
            "bounds": {"x": [self.xmin, self.xmax], "y": [self.ymin, self.ymax]},
            "t": self.t,
            "values": [None if not math.isfinite(v) else v for v in flat.tolist()],
        }


@dataclass(frozen=True)
class ScalarGrid3D:
    """Field samples over a box; ``values[k, j, i]`` is node (i, j, k)."""

    nx: int
    ny: int
    nz: int
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    zmin: float
    zmax: float
    t: float
    values: np.ndarray

    def x_coordinate(self, i: int) -> float:
        return self.xmin + i * ((self.xmax - self.xmin) / (self.nx - 1))

    def y_coordinate(self, j: int) -> float:
        return self.ymin + j * ((self.ymax - self.ymin) / (self.ny - 1))

    def z_coordinate(self, k: int) -> float:
        return self.zmin + k * ((self.zmax - self.zmin) / (self.nz - 1))

    def xs(self) -> np.ndarray:
        return axis_coordinates(self.xmin, self.xmax, self.nx)

    def ys(self) -> np.ndarray:
        return axis_coordinates(self.ymin, self.ymax, self.ny)

    def zs(self) -> np.ndarray:
        return axis_coordinates(self.zmin, self.zmax, self.nz)

    def to_json_dict(self) -> dict:
        flat = self.values.reshape(-1)
        return {
            "type": "grid",
            "counts": [self.nx, self.ny, self.nz],
            "bounds": {
                "x": [self.xmin, self.xmax],
                "y": [self.ymin, self.ymax],
                "z": [self.zmin, self.zmax],
            },
            "t": self.t,
            "values": [None if not math.isfinite(v) else v for v in flat.tolist()],
        }


# --- sampling --------------------------------------------------------------


def _check_resolution(*counts: int) -> None:
    for n in counts:
        if n < MIN_RESOLUTION:
            raise ValueError(f"resolution must be at least {MIN_RESOLUTION}, got {n}")


def sample_heightfield(
    cell: CellSpec,
    t: float = 1.0,
    nx: int = DEFAULT_RESOLUTION_2D,
    ny: int | None = None,
) -> ScalarGrid2D:
    """Sample ``z = g(x, y; t)`` over the domain's bounding rectangle.

    Nodes outside a disc domain and nodes where evaluation fails become
    holes.  Raises :class:`TimeError` for non-positive ``t`` when the
    expression depends on time.
    """
    if cell.kind != HEIGHTFIELD:
        raise ValueError("sample_heightfield needs a height-field cell")
    if ny is None:
        ny = nx
    _check_resolution(nx, ny)
    check_time(cell.expr, t)
    xmin, xmax, ymin, ymax = cell.domain.xy_bounds()
    xs = axis_coordinates(xmin, xmax, nx)
    ys = axis_coordinates(ymin, ymax, ny)
    program = compile_program(cell.expr, cell.params)
    values = _kernels.sample_2d(program, xs, ys, t)
    if isinstance(cell.domain, Disc):
        dx = xs[np.newaxis, :] - cell.domain.cx
        dy = ys[:, np.newaxis] - cell.domain.cy
        outside = dx * dx + dy * dy > cell.domain.radius * cell.domain.radius
        values[outside] = math.nan
    for (px, py), declared in sorted(cell.singular_values.items()):
        hits_x = np.nonzero(xs == px)[0]
        hits_y = np.nonzero(ys == py)[0]
        if hits_x.size and hits_y.size:
            i, j = int(hits_x[0]), int(hits_y[0])
            if not math.isfinite(values[j, i]) and cell.domain.contains_xy(px, py):
                values[j, i] = declared
    values.setflags(write=False)
    return ScalarGrid2D(nx, ny, xmin, xmax, ymin, ymax, float(t), values)


def sample_volume(
    cell: CellSpec,
    t: float = 1.0,
    nx: int = DEFAULT_RESOLUTION_3D,
    ny: int | None = None,
    nz: int | None = None,
) -> ScalarGrid3D:
    """Sample ``f(x, y, z; t)`` on a 3D lattice over the cell's box."""
    if cell.kind != IMPLICIT:
        raise ValueError("sample_volume needs an implicit cell")
    if ny is None:
        ny = nx
    if nz is None:
        nz = nx
    _check_resolution(nx, ny, nz)
    check_time(cell.expr, t)
    box = cell.domain
    assert isinstance(box, Box)
    xs = axis_coordinates(box.xmin, box.xmax, nx)
    ys = axis_coordinates(box.ymin, box.ymax, ny)
    zs = axis_coordinates(box.zmin, box.zmax, nz)
    program = compile_program(cell.expr, cell.params)
    values = _kernels.sample_3d(program, xs, ys, zs, t)
    values.setflags(write=False)
    return ScalarGrid3D(
        nx, ny, nz,
        box.xmin, box.xmax, box.ymin, box.ymax, box.zmin, box.zmax,
        float(t), values,
    )


def time_sweep(
    cell: CellSpec,
    t_start: float = 1.0,
    t_end: float = 1.0,
    steps: int = 1,
    resolution: int | Sequence[int] | None = None,
    times: Sequence[float] | None = None,
) -> list[ScalarGrid2D] | list[ScalarGrid3D]:
    """Sample the cell at a series of instants.

    By default instants are ``steps`` values linearly spaced over
    ``[t_start, t_end]`` inclusive; pass ``times`` for explicit instants
    (for example the classic 1, 2, 4 triple, which is not uniform).
    """
    if times is None:
        if steps < 1:
            raise ValueError("steps must be at least 1")
        if not 0.0 < t_start <= t_end:
            raise TimeError(
                f"need 0 < t_start <= t_end, got {t_start!r}..{t_end!r}"
            )
        if steps == 1:
            instants = [float(t_start)]
        else:
            span = (t_end - t_start) / (steps - 1)
            instants = [t_start + i * span for i in range(steps)]
    else:
        instants = [float(v) for v in times]
        if not instants:
            raise ValueError("times must be non-empty")

    if cell.kind == HEIGHTFIELD:
        n = DEFAULT_RESOLUTION_2D if resolution is None else resolution
        if isinstance(n, int):
            nx = ny = n
        else:
            nx, ny = n
        return [sample_heightfield(cell, t, nx, ny) for t in instants]
    n = DEFAULT_RESOLUTION_3D if resolution is None else resolution
    if isinstance(n, int):
        nx = ny = nz = n
    else:
        nx, ny, nz = n
    return [sample_volume(cell, t, nx, ny, nz) for t in instants]


# --- membership ------------------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    inside_domain: bool
    value: float | None
    domain_error: bool


def membership_detail(
    cell: CellSpec, point: tuple[float, float, float], t: float = 1.0
) -> MembershipResult:
    """Point-in-cell test with diagnostics.

    A point outside the spatial domain is never a member; a point where
    evaluation is undefined is reported as a non-member with the
    ``domain_error`` flag set rather than an exception.
    """
    if cell.kind != IMPLICIT:
        raise ValueError("membership applies to implicit cells")
    x, y, z = (float(v) for v in point)
    box = cell.domain
    assert isinstance(box, Box)
    if not box.contains(x, y, z):
        return MembershipResult(False, False, None, False)
    check_time(cell.expr, t)
    try:
        value = evaluate(cell.expr, x=x, y=y, z=z, t=t, params=cell.params)
    except DomainError:
        return MembershipResult(False, True, None, True)
    if not math.isfinite(value):
        return MembershipResult(False, True, None, True)
    return MembershipResult(value <= cell.iso, True, value, False)


def membership(
    cell: CellSpec, point: tuple[float, float, float], t: float = 1.0
) -> bool:
    """True iff the point lies in the domain and ``f(point; t) <= iso``."""
    return membership_detail(cell, point, t).member
