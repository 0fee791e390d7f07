"""Pure-Python sampling lane.

Runs the closure generated by ``compile_program`` at every lattice node.
Domain failures and non-finite values are recorded as NaN, which the grid
layer treats as holes.  The compiled lane mirrors this behaviour bit for
bit, so either lane can serve any caller.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError


def sample_2d(program, xs: np.ndarray, ys: np.ndarray, t: float) -> np.ndarray:
    """Evaluate ``program`` over ``ys`` x ``xs``; shape (len(ys), len(xs))."""
    f = program.pyfunc
    xlist = [float(v) for v in xs]
    out = np.empty((len(ys), len(xlist)), dtype=np.float64)
    nan, isfinite = math.nan, math.isfinite
    for j, yv in enumerate(ys):
        yv = float(yv)
        row = out[j]
        for i, xv in enumerate(xlist):
            try:
                v = f(xv, yv, 0.0, t)
            except DomainError:
                v = nan
            else:
                if not isfinite(v):
                    v = nan
            row[i] = v
    return out


def sample_3d(
    program, xs: np.ndarray, ys: np.ndarray, zs: np.ndarray, t: float
) -> np.ndarray:
    """Evaluate ``program`` over ``zs`` x ``ys`` x ``xs``."""
    f = program.pyfunc
    xlist = [float(v) for v in xs]
    ylist = [float(v) for v in ys]
    out = np.empty((len(zs), len(ylist), len(xlist)), dtype=np.float64)
    nan, isfinite = math.nan, math.isfinite
    for k, zv in enumerate(zs):
        zv = float(zv)
        plane = out[k]
        for j, yv in enumerate(ylist):
            row = plane[j]
            for i, xv in enumerate(xlist):
                try:
                    v = f(xv, yv, zv, t)
                except DomainError:
                    v = nan
                else:
                    if not isfinite(v):
                        v = nan
                row[i] = v
    return out
