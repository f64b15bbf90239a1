"""Rank mod p: numba kernel against the vectorised numpy path.

Usage: python3 benchmarks/bench_rank.py [--repeat N]

Times random dense matrices and the H = 1 cube differentials that the
oracle actually reduces.  Run with SINVARIANT_NO_JIT=1 to confirm the
fallback path is selected (the jit column then reports "disabled").
"""

import argparse
import time

import numpy as np

from sinvariant.kernels import MERSENNE, USING_JIT, rank_mod_p_jit, rank_mod_p_numpy
from sinvariant.knots import knot
from sinvariant.oracle import cube_complex


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    for n in (32, 96, 192):
        M = rng.integers(0, MERSENNE, size=(n, n), dtype=np.int64)
        M[:, n // 2 :] = M[:, : n - n // 2] * 3 % MERSENNE
        yield f"random {n}x{n}", M
    for name in ("6_2", "7_4"):
        C = cube_complex(knot(name), 0, h=1, degrees=(-1, 0, 1))
        for d, D in sorted(C.diffs.items()):
            yield f"{name} d{d} {D.shape[0]}x{D.shape[1]}", D


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if USING_JIT:
        rank_mod_p_jit(np.eye(2, dtype=np.int64), MERSENNE)  # compile outside the timings
    print(f"{'case':28s} {'numpy [s]':>10s} {'jit [s]':>10s} {'speedup':>8s}")
    for label, M in cases():
        tn, rn = best_of(lambda: rank_mod_p_numpy(M, MERSENNE), args.repeat)
        if USING_JIT:
            tj, rj = best_of(lambda: rank_mod_p_jit(M, MERSENNE), args.repeat)
            assert rn == rj, (label, rn, rj)
            print(f"{label:28s} {tn:10.4f} {tj:10.4f} {tn / tj:8.1f}")
        else:
            print(f"{label:28s} {tn:10.4f} {'disabled':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
