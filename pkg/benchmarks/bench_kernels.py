"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from sepscope import _kernels_py

try:
    from sepscope import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

SHAPES = [(2, 2), (3, 3), (4, 4), (8, 8), (16, 16)]


def cases(da: int, db: int):
    n = da * db
    rng = np.random.default_rng(0)
    m = np.ascontiguousarray(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
    yield "partial_trace", (m, da, db, 0)
    yield "partial_transpose", (m, da, db, 0)
    yield "gamma_lift[M]", (m, da, db, 2)
    if da % 2 == 0 and db % 2 == 0:
        yield "regroup4", (m, da // 2, 2, db // 2, 2)


def best_time(fn, args, repeat: int) -> float:
    number = 200
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels_c is None:
        print("compiled extension not available; only the fallback is timed")
    print(f"{'kernel':<18} {'shape':>7} {'numpy (us)':>11} {'cython (us)':>12} {'speedup':>8}")
    for da, db in SHAPES:
        for name, a in cases(da, db):
            fn = name.split("[")[0]
            tp = best_time(getattr(_kernels_py, fn), a, args.repeat) * 1e6
            if _kernels_c is None:
                print(f"{name:<18} {da}x{db:<5} {tp:11.2f} {'-':>12} {'-':>8}")
                continue
            tc = best_time(getattr(_kernels_c, fn), a, args.repeat) * 1e6
            print(f"{name:<18} {da}x{db:<5} {tp:11.2f} {tc:12.2f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
