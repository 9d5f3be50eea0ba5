"""Compare the two row-reduction backends on random matrices.

Run as `python3 benchmarks/bench_kernels.py [--sizes 64,128,256] [--reps 5]`.
The active backend for the library itself is picked at import time from
QUIVERLAB_BACKEND; this script times both implementations side by side
(when numba is importable) and checks that they agree entry for entry.
"""
import argparse
import time

import numpy as np

from quiverlab import _kernels as K


def bench(fn, mats, reps):
    best = float("inf")
    for _ in range(reps):
        t0 = time.perf_counter()
        for m in mats:
            fn(m)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="64,128,256,384")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    impls = [("numpy", K._rref_numpy)]
    if K._rref_numba is not None:
        K._rref_numba(rng.integers(0, K.P, (8, 8)))  # compile outside the clock
        impls.append(("numba", K._rref_numba))
    else:
        print("numba not importable; timing the numpy backend only")

    print(f"active library backend: {K.BACKEND}")
    header = "size      " + "".join(f"{name:>12}" for name, _ in impls)
    print(header)
    for n in sizes:
        mats = [rng.integers(0, K.P, (n, n + n // 4)) for _ in range(4)]
        row = [f"{n:<10d}"]
        results = []
        for name, fn in impls:
            dt = bench(fn, mats, args.reps)
            row.append(f"{1e3 * dt / len(mats):9.2f} ms")
            results.append([fn(m) for m in mats])
        for outs in zip(*results):
            r0, p0 = outs[0]
            for r, p in outs[1:]:
                assert np.array_equal(r0, r) and np.array_equal(p0, p), "backends disagree"
        print("".join(row))


if __name__ == "__main__":
    main()
