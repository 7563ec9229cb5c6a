"""Benchmark the numba kernels against their pure-numpy fallbacks.

Usage: python3 benchmarks/bench_kernels.py [catalog-id ...]

Runs subgroup closure and the full associativity scan on each group with
both implementations and prints the speedup.  Requires numba; if it is
unavailable only the numpy path runs.
"""

import sys
import time

import numpy as np

from maxpair import _kernels
from maxpair.catalog import get_group


def _time(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_group(ident):
    G, _ = get_group(ident)
    mul = G.mul
    rng = np.random.default_rng(0)
    seeds = [rng.choice(G.n, size=2, replace=False).astype(np.int64)
             for _ in range(20)]

    def closure_many(impl):
        return [impl(mul, s) for s in seeds]

    print(f"{ident} (order {G.n})")
    t_py, ref = _time(lambda: closure_many(_kernels._closure_py))
    if _kernels.USE_NUMBA:
        closure_many(_kernels._closure_nb)  # warm the jit
        t_nb, got = _time(lambda: closure_many(_kernels._closure_nb))
        assert all(np.array_equal(a, b) for a, b in zip(ref, got))
        print(f"  closure x20:  numpy {t_py * 1e3:8.2f} ms   "
              f"numba {t_nb * 1e3:8.2f} ms   ({t_py / t_nb:5.1f}x)")
    else:
        print(f"  closure x20:  numpy {t_py * 1e3:8.2f} ms   (numba disabled)")

    if G.n <= 1000:
        t_py, r = _time(_kernels._assoc_py, mul, repeat=1)
        if _kernels.USE_NUMBA:
            _kernels._assoc_nb(mul)
            t_nb, r2 = _time(_kernels._assoc_nb, mul, repeat=1)
            assert r == r2 == -1
            print(f"  assoc scan:   numpy {t_py * 1e3:8.2f} ms   "
                  f"numba {t_nb * 1e3:8.2f} ms   ({t_py / t_nb:5.1f}x)")
        else:
            print(f"  assoc scan:   numpy {t_py * 1e3:8.2f} ms")


def main():
    idents = sys.argv[1:] or ["q8", "sg-81-10", "sg-162-22", "p4-5", "p5-unique-5"]
    print(f"numba available: {_kernels.USE_NUMBA}")
    for ident in idents:
        bench_group(ident)


if __name__ == "__main__":
    main()
