"""Compare the compiled sampling lane against the pure-Python fallback.

Run with:

    python3 benchmarks/bench_kernels.py

Both lanes produce bit-identical grids; this script reports how much
faster the compiled stack machine is on representative workloads.
"""

from __future__ import annotations

import time

import numpy as np

from morphocell._kernels import fallback
from morphocell.dsl import compile_program, parse

try:
    from morphocell._kernels import _core
except ImportError:
    _core = None

CASES = {
    "polynomial": "x^2 + y^2 + z^2",
    "time-warp": "abs(x*y)^(1/t)",
    "transcendental": "exp(-(x^2+y^2)^(1/t)) + sin(x*y)*cos(y) + atan2(y, x)",
    "guarded": "ln(x + 2.5)^2 + sqrt(abs(y)) + min(x, y)/max(1, x^2)",
}


def best_of(repeats: int, fn, *args) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_2d(name: str, source: str, n: int = 513, repeats: int = 3) -> None:
    program = compile_program(parse(source), {})
    xs = np.linspace(-2.0, 2.0, n)
    ys = np.linspace(-2.0, 2.0, n)
    slow = best_of(repeats, fallback.sample_2d, program, xs, ys, 2.0)
    line = f"  2d {name:14s} {n}x{n}: python {slow * 1e3:8.1f} ms"
    if _core is not None:
        fast = best_of(repeats, _core.sample_2d, program, xs, ys, 2.0)
        a = _core.sample_2d(program, xs, ys, 2.0)
        b = fallback.sample_2d(program, xs, ys, 2.0)
        same = np.array_equal(a, b) or (
            np.array_equal(np.isnan(a), np.isnan(b))
            and np.array_equal(a[~np.isnan(a)], b[~np.isnan(b)])
        )
        line += f" | compiled {fast * 1e3:7.2f} ms | {slow / fast:6.1f}x"
        line += "" if same else "  !! lanes disagree"
    print(line)


def bench_3d(name: str, source: str, n: int = 65, repeats: int = 3) -> None:
    program = compile_program(parse(source), {})
    xs = np.linspace(-1.5, 1.5, n)
    ys = np.linspace(-1.5, 1.5, n)
    zs = np.linspace(-1.5, 1.5, n)
    slow = best_of(repeats, fallback.sample_3d, program, xs, ys, zs, 2.0)
    line = f"  3d {name:14s} {n}^3  : python {slow * 1e3:8.1f} ms"
    if _core is not None:
        fast = best_of(repeats, _core.sample_3d, program, xs, ys, zs, 2.0)
        line += f" | compiled {fast * 1e3:7.2f} ms | {slow / fast:6.1f}x"
    print(line)


def main() -> None:
    lane = "compiled + python" if _core is not None else "python only"
    print(f"sampling lanes available: {lane}")
    for name, source in CASES.items():
        bench_2d(name, source)
    for name in ("polynomial", "transcendental"):
        bench_3d(name, CASES[name])


if __name__ == "__main__":
    main()
