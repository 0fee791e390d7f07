"""Field-sampling kernels: a compiled fast lane with a pure-Python fallback.

The lane is fixed once at import time.  Set ``MORPHOCELL_KERNELS`` to
``compiled`` or ``python`` to force a lane (``compiled`` fails loudly when
the extension is unavailable); the default ``auto`` prefers the extension
and falls back silently.  Both lanes are bit-identical, so the choice only
affects speed.
"""

from __future__ import annotations

import importlib
import os

import numpy as np

from . import fallback

_choice = os.environ.get("MORPHOCELL_KERNELS", "auto").strip().lower()
if _choice not in {"auto", "compiled", "python"}:
    raise ImportError(
        f"MORPHOCELL_KERNELS must be 'auto', 'compiled' or 'python', got {_choice!r}"
    )

_core = None
if _choice in {"auto", "compiled"}:
    try:
        _core = importlib.import_module("._core", __name__)
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "MORPHOCELL_KERNELS=compiled but the compiled extension is not built"
            ) from None

ACTIVE_LANE: str = "python" if _core is None else "compiled"


def active_lane() -> str:
    """Name of the lane selected at import: 'compiled' or 'python'."""
    return ACTIVE_LANE


def sample_2d(program, xs, ys, t: float) -> np.ndarray:
    """Sample ``program`` on the tensor grid ``ys`` x ``xs`` at time ``t``.

    Returns float64 of shape ``(len(ys), len(xs))`` with x along the last
    axis.  Domain failures and non-finite values come back as NaN.
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    if _core is not None:
        return _core.sample_2d(program, xs, ys, float(t))
    return fallback.sample_2d(program, xs, ys, float(t))


def sample_3d(program, xs, ys, zs, t: float) -> np.ndarray:
    """Sample ``program`` on ``zs`` x ``ys`` x ``xs`` at time ``t``."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    zs = np.ascontiguousarray(zs, dtype=np.float64)
    if _core is not None:
        return _core.sample_3d(program, xs, ys, zs, float(t))
    return fallback.sample_3d(program, xs, ys, zs, float(t))
