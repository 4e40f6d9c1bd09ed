"""Compare the compiled segment-field kernel against the numpy fallback.

Run:  python3 benchmarks/bench_kernels.py [--segments 2000] [--points 4096]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from atomchip._kernels import BACKEND_NAME, pure

try:
    from atomchip._kernels import _fastseg
except ImportError:
    _fastseg = None


def make_case(n_seg: int, n_pts: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1e-3, 1e-3, (n_seg, 3))
    b = a + rng.uniform(-1e-4, 1e-4, (n_seg, 3))
    cur = rng.uniform(-2.0, 2.0, n_seg)
    excl = np.full(n_seg, 1e-6)
    pts = rng.uniform(-1e-3, 1e-3, (n_pts, 3))
    pts[:, 2] = np.abs(pts[:, 2]) + 5e-5  # stay off the wires
    return a, b, cur, excl, pts


def bench(fn, args, repeats: int = 5) -> float:
    fn(*args)  # warm up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--segments", type=int, default=2000)
    ap.add_argument("--points", type=int, default=4096)
    args = ap.parse_args()

    case = make_case(args.segments, args.points)
    evals = args.segments * args.points

    b_pure, c_pure = pure.segment_fields(*case)
    t_pure = bench(pure.segment_fields, case)
    print(f"pure numpy : {t_pure * 1e3:8.2f} ms  ({evals / t_pure / 1e6:7.1f} M pair-evals/s)")

    if _fastseg is None:
        print("compiled   : not built (install with Cython and a C compiler)")
        return

    b_fast, c_fast = _fastseg.segment_fields(*case)
    t_fast = bench(_fastseg.segment_fields, case)
    print(f"compiled   : {t_fast * 1e3:8.2f} ms  ({evals / t_fast / 1e6:7.1f} M pair-evals/s)")
    print(f"speedup    : {t_pure / t_fast:8.2f}x   (active backend: {BACKEND_NAME})")

    db = np.max(np.abs(b_fast - b_pure)) / max(np.max(np.abs(b_pure)), 1e-300)
    dc = np.max(np.abs(c_fast - c_pure)) / max(np.max(np.abs(c_pure)), 1e-300)
    print(f"agreement  : field {db:.2e}  clearance {dc:.2e} (relative)")


if __name__ == "__main__":
    main()
