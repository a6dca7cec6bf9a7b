"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--q 361] [--degree 8] [--repeat 5]
"""

import argparse
import time

import numpy as np

from recipcurves.field_tower import tower_for_q
from recipcurves import kernels
from recipcurves.kernels import _pykernels

try:
    from recipcurves.kernels import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=361)
    ap.add_argument("--degree", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    F = tower_for_q(args.q).big
    qm1 = F.order - 1
    rng = np.random.default_rng(args.seed)
    coeffs = [int(c) for c in rng.integers(1, F.order, size=args.degree + 1)]
    print(f"F_{F.order}, {qm1} nonzero elements, polynomial degree {args.degree}")

    impls = [("numpy", _pykernels)] + ([("compiled", _ckernels)] if _ckernels else [])
    results = {}
    for name, impl in impls:
        t1, num = best_of(lambda: kernels.eval_poly_logs(F, coeffs, impl), args.repeat)
        den = kernels.eval_poly_logs(F, coeffs[::-1], impl)
        t2, r = best_of(lambda: kernels.ratio_logs(num, den, qm1, impl), args.repeat)
        t3, c = best_of(lambda: kernels.count_joint_residues(r, 4, r, 2, impl), args.repeat)
        results[name] = (num, r, c)
        print(f"{name:>9}: eval {t1 * 1e3:8.2f} ms   ratio {t2 * 1e3:7.2f} ms   residues {t3 * 1e3:7.2f} ms")
    if len(results) == 2:
        a, b = results["numpy"], results["compiled"]
        same = np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1]) and a[2] == b[2]
        print("outputs identical:", same)
    else:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
