"""Compare the compiled DP kernels against the pure-Python fallback.

Run as a script: python benchmarks/bench_kernels.py [--repeat N].
Times min_cover_solve, max_profit_solve and kc_best_subset on a sweep
of instance sizes and prints one table row per case.  Both backends
must agree on every answer; the benchmark aborts if they disagree.
"""

from __future__ import annotations

import argparse
import random
import time

from pitchcut import _kernels_py, kernels


def _timed(fn, *args, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        elapsed = time.perf_counter() - start
        if best is None or elapsed < best:
            best = elapsed
    return result, best


def _cover_case(rng, n, rmax):
    r = sorted(rng.randint(1, rmax) for _ in range(n))
    obj = [rng.randint(0, 50) for _ in range(n)]
    need = max(1, sum(r) // 3)
    return r, obj, need


def _profit_case(rng, n, cmax):
    cost = [rng.randint(1, cmax) for _ in range(n)]
    r = [rng.randint(1, 60) for _ in range(n)]
    budget = sum(cost) // 2
    target = max(1, sum(r) // 3)
    return cost, r, budget, target

def _kc_case(rng, n):
    q = 64
    r = sorted(rng.randint(1, 40) for _ in range(n))
    X = 16
    a = [rng.randint(0, X) for _ in range(n)]
    return r, a, X, q


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    rng = random.Random(20240901)

    if not kernels.HAVE_SPEEDUPS:
        print("compiled extension not available; timing fallback only")
    compiled = kernels._speedups if kernels.HAVE_SPEEDUPS else None

    print("%-18s %8s %12s %12s %8s" % ("kernel", "n", "python", "compiled",
                                       "speedup"))
    for n in (50, 200, 800):
        r, obj, need = _cover_case(rng, n, 200)
        py_res, py_t = _timed(_kernels_py.min_cover_solve, r, obj, need,
                              repeat=args.repeat)
        line = "%-18s %8d %12.4f" % ("min_cover_solve", n, py_t)
        if compiled is not None:
            c_res, c_t = _timed(compiled.min_cover_solve, r, obj, need,
                                repeat=args.repeat)
            assert c_res == py_res, "backend mismatch on min_cover_solve"
            line += " %12.4f %7.1fx" % (c_t, py_t / c_t if c_t else 0.0)
        print(line)

    for n in (50, 200, 800):
        cost, r, budget, target = _profit_case(rng, n, 80)
        py_res, py_t = _timed(_kernels_py.max_profit_solve, cost, r, budget,
                              target, repeat=args.repeat)
        line = "%-18s %8d %12.4f" % ("max_profit_solve", n, py_t)
        if compiled is not None:
            c_res, c_t = _timed(compiled.max_profit_solve, cost, r, budget,
                                target, repeat=args.repeat)
            assert c_res == py_res, "backend mismatch on max_profit_solve"
            line += " %12.4f %7.1fx" % (c_t, py_t / c_t if c_t else 0.0)
        print(line)

    for n in (12, 16, 20):
        r, a, X, q = _kc_case(rng, n)
        py_res, py_t = _timed(_kernels_py.kc_best_subset, r, a, X, q,
                              repeat=args.repeat)
        line = "%-18s %8d %12.4f" % ("kc_best_subset", n, py_t)
        if compiled is not None:
            c_res, c_t = _timed(compiled.kc_best_subset, r, a, X, q,
                                repeat=args.repeat)
            assert c_res == py_res, "backend mismatch on kc_best_subset"
            line += " %12.4f %7.1fx" % (c_t, py_t / c_t if c_t else 0.0)
        print(line)


if __name__ == "__main__":
    main()
