"""Benchmark the compiled enumeration kernel against the pure-Python one.

Both kernels implement the same chunked lexicographic search; this script
times them on identical inputs and cross-checks the results.

    python3 benchmarks/bench_solver.py [--sizes 40,80,120] [--k 2] [--seed 0]
"""

from __future__ import annotations

import argparse
import time

from simsep import _core_py
from simsep.generators import random_bounded_tree
from simsep.solver import SolverBudget, best_separation
from simsep.trees import all_edge_cuts, make_family

try:
    from simsep import _core
except ImportError:
    _core = None


def bench_kernel(kernel, family):
    masks = [
        [side.bits for _, side in all_edge_cuts(t)] for t in family.trees
    ]
    n = family.n
    t0 = time.perf_counter()
    result = kernel.enumerate_best(masks, n, 0, len(masks[0]), 0)
    return time.perf_counter() - t0, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="40,80,120,160")
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"{'n':>6} {'cut vectors':>14} {'python (s)':>12} {'compiled (s)':>13} {'speedup':>8}")
    for n in sizes:
        family = make_family(
            [random_bounded_tree(n, 3, args.seed + i) for i in range(args.k)]
        )
        vectors = 1
        for t in family.trees:
            vectors *= len(t.edges)
        t_py, res_py = bench_kernel(_core_py, family)
        if _core is None:
            print(f"{n:>6} {vectors:>14} {t_py:>12.3f} {'n/a':>13} {'n/a':>8}")
            continue
        t_c, res_c = bench_kernel(_core, family)
        assert res_py == res_c, f"kernel mismatch at n={n}: {res_py} vs {res_c}"
        print(f"{n:>6} {vectors:>14} {t_py:>12.3f} {t_c:>13.3f} {t_py / t_c:>7.1f}x")

    # sanity: full solver path agrees with itself under both kernels
    family = make_family([random_bounded_tree(60, 3, args.seed + i) for i in range(2)])
    print("solve n=60 k=2:", best_separation(family, SolverBudget()).value)


if __name__ == "__main__":
    main()
