"""Spiral constructions: Fibonacci quarter-arc chains, the golden spiral,
and the logarithmic spiral r = phi^(b*theta) with its time transform.

The quarter-arc chains are built by one recurrence: each arc sweeps a
counterclockwise quarter turn, and the next center lies along the line
from the current end point through the current center, at the next
radius.  That keeps endpoints exactly continuous and tangents exactly
aligned while letting radii follow any non-decreasing sequence, the
Fibonacci numbers or powers of phi alike.

The time transform scales the growth exponent: r(theta; t) = phi^(b*theta*t),
so t = 1 is the classic curve and t = 0.5 takes pointwise square roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dsl import PHI
from .errors import DomainError, OriginError, TimeError

#: Growth constant making the spiral gain a factor of phi per quarter turn.
GOLDEN_GROWTH: float = 2.0 / math.pi

_QUARTER = math.pi / 2.0


@dataclass(frozen=True)
class Square:
    origin: tuple[float, float]
    side: float
    index: int


@dataclass(frozen=True)
class Arc:
    """Circular arc swept counterclockwise from start_angle to end_angle."""

    center: tuple[float, float]
    radius: float
    start_angle: float
    end_angle: float

    def point_at(self, angle: float) -> tuple[float, float]:
        return (
            self.center[0] + self.radius * math.cos(angle),
            self.center[1] + self.radius * math.sin(angle),
        )

    def start_point(self) -> tuple[float, float]:
        return self.point_at(self.start_angle)

    def end_point(self) -> tuple[float, float]:
        return self.point_at(self.end_angle)


@dataclass(frozen=True)
class ArcChain:
    arcs: tuple[Arc, ...]

    def __post_init__(self) -> None:
        radii = self.radii()
        for previous, current in zip(radii, radii[1:]):
            if current < previous:
                raise ValueError("arc radii must be non-decreasing")

    def radii(self) -> tuple[float, ...]:
        return tuple(arc.radius for arc in self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class Polyline:
    """Sampled planar curve with its polar coordinates alongside."""

    points: np.ndarray
    thetas: np.ndarray
    radii: np.ndarray

    def __len__(self) -> int:
        return int(self.points.shape[0])


@dataclass(frozen=True)
class SpiralSpec:
    """Parameters of the logarithmic spiral r = phi^(b*theta*t)."""

    b: float = GOLDEN_GROWTH
    t: float = 1.0
    theta_range: tuple[float, float] = (0.0, 4.0 * math.pi)
    samples: int = 1025

    def __post_init__(self) -> None:
        if not self.t > 0:
            raise TimeError(f"time must be positive, got {self.t!r}")
        if not self.theta_range[0] < self.theta_range[1]:
            raise ValueError("theta range must satisfy start < end")
        if self.samples < 2:
            raise ValueError("need at least 2 samples")


# --- Fibonacci tiling and quarter-arc chains -------------------------------


def fibonacci_numbers(count: int) -> list[int]:
    """First ``count`` Fibonacci numbers starting 1, 1, 2, 3, 5, 8."""
    if count < 1:
        raise ValueError("count must be at least 1")
    numbers = [1, 1]
    while len(numbers) < count:
        numbers.append(numbers[-1] + numbers[-2])
    return numbers[:count]


def fibonacci_squares(n: int) -> list[Square]:
    """Tile ``n`` squares of Fibonacci sides around the unit start square.

    Placement cycles counterclockwise (right, up, left, down); the union
    is always the current Fibonacci rectangle.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sides = fibonacci_numbers(n)
    squares = [Square((0.0, 0.0), 1.0, 0)]
    x0, x1, y0, y1 = 0.0, 1.0, 0.0, 1.0
    for k in range(1, n):
        side = float(sides[k])
        direction = k % 4
        if direction == 1:
            origin = (x1, y0)
            x1 += side
        elif direction == 2:
            origin = (x0, y1)
            y1 += side
        elif direction == 3:
            origin = (x0 - side, y0)
            x0 -= side
        else:
            origin = (x0, y0 - side)
            y0 -= side
        squares.append(Square(origin, side, k))
    return squares


def quarter_arc_chain(
    radii: Sequence[float],
    start_center: tuple[float, float],
    start_angle: float,
) -> ArcChain:
    """Chain counterclockwise quarter arcs of the given radii.

    Consecutive arcs share their junction point exactly and their tangent
    directions coincide there; only curvature jumps.
    """
    arcs: list[Arc] = []
    cx, cy = start_center
    angle = start_angle
    for k, radius in enumerate(radii):
        radius = float(radius)
        if not radius > 0:
            raise ValueError("radii must be positive")
        end = angle + _QUARTER
        arcs.append(Arc((cx, cy), radius, angle, end))
        if k + 1 < len(radii):
            px = cx + radius * math.cos(end)
            py = cy + radius * math.sin(end)
            ux = (cx - px) / radius
            uy = (cy - py) / radius
            nxt = float(radii[k + 1])
            cx, cy = px + nxt * ux, py + nxt * uy
            angle = end
    return ArcChain(tuple(arcs))


def fibonacci_spiral(n: int) -> ArcChain:
    """Quarter-arc spiral through the Fibonacci tiling, one arc per square."""
    if n < 2:
        raise ValueError("n must be at least 2")
    radii = [float(v) for v in fibonacci_numbers(n)]
    return quarter_arc_chain(radii, (1.0, 1.0), math.pi)


def golden_spiral(levels: int) -> ArcChain:
    """Quarter-arc spiral with exact ratio phi between consecutive radii."""
    if levels < 2:
        raise ValueError("levels must be at least 2")
    radii = [PHI**k for k in range(levels)]
    return quarter_arc_chain(radii, (1.0, 1.0), math.pi)


# --- logarithmic spiral ----------------------------------------------------


def log_spiral(spec: SpiralSpec) -> Polyline:
    """Sample r = phi^(b*theta*t) uniformly in theta."""
    t0, t1 = spec.theta_range
    step = (t1 - t0) / (spec.samples - 1)
    thetas = t0 + np.arange(spec.samples, dtype=np.float64) * step
    with np.errstate(over="ignore"):
        radii = PHI ** (spec.b * thetas * spec.t)
    if not np.isfinite(radii).all():
        raise DomainError("spiral radii overflow doubles for these parameters")
    points = np.column_stack((radii * np.cos(thetas), radii * np.sin(thetas)))
    return Polyline(points, thetas, radii)


def ode_residual(spec: SpiralSpec) -> float:
    """Worst central-difference defect of dr/dtheta = b*ln(phi)*r.

    The growth law holds for the untransformed spiral, so ``spec.t`` must
    be 1.  The residual shrinks with the square of the sample step.
    """
    if spec.t != 1.0:
        raise ValueError("the growth law applies at t=1")
    if spec.samples < 3:
        raise ValueError("need at least 3 samples for central differences")
    curve = log_spiral(spec)
    step = (spec.theta_range[1] - spec.theta_range[0]) / (spec.samples - 1)
    r = curve.radii
    derivative = (r[2:] - r[:-2]) / (2.0 * step)
    target = spec.b * math.log(PHI) * r[1:-1]
    return float(np.abs(derivative - target).max())


def implicit_spiral_check(point: tuple[float, float], b: float) -> float:
    """Distance from the principal-branch spiral relation at one point.

    Computes ``|phi^(b*angle) - sqrt(x^2 + y^2)|`` with the two-argument
    angle in (-pi, pi].  Points sampled from the spiral with theta in that
    range satisfy the relation to rounding error; other turns deviate by
    whole factors of phi^(2*pi*b).
    """
    x, y = point
    if x == 0.0 and y == 0.0:
        raise OriginError("the spiral relation is undefined at the origin")
    angle = math.atan2(y, x)
    return abs(PHI ** (b * angle) - math.hypot(x, y))
