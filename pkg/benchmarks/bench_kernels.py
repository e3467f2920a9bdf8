"""Compare the compiled and pure-Python kernels on ansatz-sized inputs.

Run from the repository root after building the extension:

    python benchmarks/bench_kernels.py [--sizes 200 600 1200] [--repeat 3]
"""

import argparse
import random
import sys
import time

from dluroth import _kernels_py
from dluroth.implicitize import PRIME_BOUND, monomial_exponents
from dluroth.linalg import primes_below

try:
    from dluroth import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def ansatz(nvars, ncols, rng, p):
    degree = 1
    while len(monomial_exponents(nvars, degree)) < ncols:
        degree += 1
    exps = monomial_exponents(nvars, degree)[:ncols]
    points = [[rng.randrange(p) for _ in range(nvars)] for _ in range(ncols + 8)]
    return exps, points


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 300, 600])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--nvars", type=int, default=6)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`")
        return 1
    rng = random.Random(0)
    p = next(primes_below(PRIME_BOUND))
    print(f"prime {p}, {args.nvars} variables, best of {args.repeat}")
    print(f"{'kernel':<22}{'size':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for n in args.sizes:
        exps, pts = ansatz(args.nvars, n, rng, p)
        rows = _ckernels.monomial_rows_mod_p(exps, pts, p)
        assert rows == _kernels_py.monomial_rows_mod_p(exps, pts, p)
        # drop a column's worth of rank so the kernel is nontrivial
        rows = [r[:-1] + [r[0]] for r in rows]
        assert _ckernels.kernel_mod_p(rows, n, p) == _kernels_py.kernel_mod_p(rows, n, p)
        small = [[rng.randint(-50, 50) for _ in range(n // 10)] for _ in range(n // 10)]
        cases = [
            ("monomial_rows_mod_p", lambda m: m.monomial_rows_mod_p(exps, pts, p)),
            ("kernel_mod_p", lambda m: m.kernel_mod_p(rows, n, p)),
            ("bareiss_echelon", lambda m: m.bareiss_echelon(small)),
        ]
        for name, fn in cases:
            tp = best_of(lambda: fn(_kernels_py), args.repeat)
            tc = best_of(lambda: fn(_ckernels), args.repeat)
            size = n // 10 if name == "bareiss_echelon" else n
            print(f"{name:<22}{size:>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
