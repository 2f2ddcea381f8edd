"""Time the compiled kernels against their numpy twins.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Each case is run on identical inputs with both backends; the table shows the
best-of-``repeat`` wall time and the speedup of the compiled version. The
max abs difference between the two outputs is reported as a sanity check.
"""
import argparse
import json
import sys
import timeit

import numpy as np

from polyanalytic import _kernels_py as py

try:
    from polyanalytic import _kernels as cy
except ImportError:
    cy = None


def rand(rng, *shape):
    return np.ascontiguousarray(rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape))


def cases(rng):
    C = rand(rng, 5, 7)
    pts = rand(rng, 40_000)
    A, B = rand(rng, 5, 7), rand(rng, 5, 7)
    S, T = rand(rng, 4, 65), rand(rng, 4, 65)
    c = rand(rng, 65)
    c[0] = 2.0
    return {
        "eval_matrix 5x7 @ 40k pts": lambda m: m.eval_matrix(C, 0.1j, pts),
        "extreme_abs 5x7 @ 40k pts": lambda m: m.extreme_abs(C, 0j, pts, True)[1],
        "conv2 5x7 * 5x7 (full)": lambda m: m.conv2(A, B, -1, -1),
        "conv2 4x65 * 4x65 (q=4, D=64)": lambda m: m.conv2(S, T, 4, 65),
        "series_reciprocal D=64": lambda m: m.series_reciprocal(c),
    }


def best_time(fn, repeat):
    number = max(1, int(0.2 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true", help="print machine-readable rows")
    args = ap.parse_args(argv)
    if cy is None:
        print("compiled extension not built; only the numpy backend is available", file=sys.stderr)
        return 1
    rows = []
    for name, call in cases(np.random.default_rng(0)).items():
        diff = float(np.max(np.abs(np.asarray(call(cy)) - np.asarray(call(py)))))
        t_cy = best_time(lambda: call(cy), args.repeat)
        t_py = best_time(lambda: call(py), args.repeat)
        rows.append({"case": name, "cython_s": t_cy, "numpy_s": t_py,
                     "speedup": t_py / t_cy, "max_abs_diff": diff})
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    print(f"{'case':34s} {'cython':>12s} {'numpy':>12s} {'speedup':>8s} {'max diff':>9s}")
    for r in rows:
        print(f"{r['case']:34s} {r['cython_s'] * 1e6:10.1f}us {r['numpy_s'] * 1e6:10.1f}us "
              f"{r['speedup']:7.1f}x {r['max_abs_diff']:9.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
