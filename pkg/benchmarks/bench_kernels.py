"""Compare the numba kernels with their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--n 5] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from lcmlat import kernels
from lcmlat._accel import HAVE_NUMBA


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=5, help="atoms for the enumeration benchmark")
    ap.add_argument("--size", type=int, default=120, help="matrix side for the rank benchmark")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not HAVE_NUMBA:
        print("numba unavailable; only the numpy path is timed")

    rng = np.random.default_rng(0)
    mat = rng.integers(0, 2, size=(args.size, args.size)).astype(np.int64)

    cases = [
        (f"count L({args.n})", kernels.count_families_numba, kernels.count_families_numpy, (args.n,)),
        ("rank mod 2", kernels.rank_mod_p_numba, kernels.rank_mod_p_numpy, (mat, 2)),
        ("rank mod 7", kernels.rank_mod_p_numba, kernels.rank_mod_p_numpy, (mat, 7)),
    ]
    print(f"{'kernel':<14}{'numba s':>10}{'numpy s':>10}{'speedup':>9}  agree")
    for name, fast, slow, fargs in cases:
        a = slow(*fargs)
        t_slow = best_of(lambda: slow(*fargs), args.repeat)
        if HAVE_NUMBA:
            b = fast(*fargs)  # warm-up compiles
            t_fast = best_of(lambda: fast(*fargs), args.repeat)
            print(f"{name:<14}{t_fast:>10.4f}{t_slow:>10.4f}{t_slow / t_fast:>8.1f}x  {a == b}")
        else:
            print(f"{name:<14}{'-':>10}{t_slow:>10.4f}{'-':>9}  -")


if __name__ == "__main__":
    main()
