"""Benchmark the elimination kernels: compiled vs pure-numpy backend,
plain vs accelerated block path.

Usage: python3 benchmarks/bench_rank.py [--sizes 1024,2048,4096] [--repeat 3]
"""

import argparse
import time

import numpy as np

from cosetstore.gf2 import BACKEND, Gf2Matrix, get_kernel


def bench_one(m: Gf2Matrix, kernel_name: str, accelerated: bool, repeat: int):
    kern = get_kernel(kernel_name)
    best = float("inf")
    rank = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        rank = m.rank(accelerated=accelerated, kernel=kern)
        best = min(best, time.perf_counter() - t0)
    return rank, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="512,1024,2048,4096")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    kernels = ["python"] + (["cython"] if BACKEND == "cython" else [])
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(args.seed)

    print(f"active backend: {BACKEND}")
    print(f"{'n':>6} {'kernel':>8} {'path':>12} {'rank':>6} {'seconds':>10}")
    for n in sizes:
        m = Gf2Matrix.random(n, n, rng)
        ranks = set()
        for kernel_name in kernels:
            for accelerated in (False, True):
                rank, dt = bench_one(m, kernel_name, accelerated, args.repeat)
                ranks.add(rank)
                path = "accelerated" if accelerated else "plain"
                print(f"{n:>6} {kernel_name:>8} {path:>12} {rank:>6} {dt:>10.4f}")
        if len(ranks) != 1:
            raise SystemExit(f"rank disagreement at n={n}: {ranks}")


if __name__ == "__main__":
    main()
