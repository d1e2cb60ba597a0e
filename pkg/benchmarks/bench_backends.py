"""Compare the compiled and uncompiled hull kernels.

Runs the same convex hull workloads against the numba backend (default)
and the pure-numpy fallback (RANDPOLY_BACKEND=numpy) and prints a timing
table.  The fallback executes the identical kernel source uncompiled, so
the outputs are checked to be exactly equal along the way.

Usage: python benchmarks/bench_backends.py [--repeats R]
"""

import argparse
import time

import numpy as np

from randpoly.hull import convex_hull
from randpoly.rng import StreamKey, make_stream, sample

CASES = [
    # (kind, d, n)
    ("cube", 3, 2000),
    ("gaussian", 4, 1000),
    ("cube", 5, 1000),
    ("l2ball", 5, 2000),
    ("cube", 6, 500),
]


def time_backend(points: np.ndarray, backend: str, repeats: int) -> tuple:
    best = float("inf")
    hull = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        hull = convex_hull(points, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, hull


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    # pay the one-off JIT compilation before timing
    convex_hull(np.random.default_rng(0).random((50, 3)), backend="numba")

    print(f"{'case':<24} {'facets':>7} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for kind, d, n in CASES:
        pts = sample(kind, make_stream(StreamKey(99, d, "points")), d, n)
        t_jit, hull_jit = time_backend(pts, "numba", args.repeats)
        t_py, hull_py = time_backend(pts, "numpy", 1)
        assert hull_jit.facet_tuples() == hull_py.facet_tuples()
        label = f"{kind} d={d} n={n}"
        print(
            f"{label:<24} {hull_jit.num_facets:>7} {t_jit:>9.3f}s "
            f"{t_py:>9.3f}s {t_py / t_jit:>7.1f}x"
        )


if __name__ == "__main__":
    main()
