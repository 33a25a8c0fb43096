"""Timing of the modular kernels: numba against the numpy fallback.

    python -m mrstab.bench [--sizes 40,80,160] [--repeat 3]

Also times the index oracle on a few seaweeds end to end.  Results of the two
backends are compared before any timing is reported.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from . import kernels


def _best(f, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        f()
        best = min(best, time.perf_counter() - t0)
    return best


def random_matrix(rows: int, cols: int, rank: int, p: int, seed: int = 0) -> np.ndarray:
    """rows x cols matrix mod p of the given rank (with high probability)."""
    rng = np.random.default_rng(seed)
    left = rng.integers(0, p, size=(rows, rank), dtype=np.int64)
    right = rng.integers(0, p, size=(rank, cols), dtype=np.int64)
    out = np.zeros((rows, cols), dtype=np.int64)
    for k in range(rank):  # accumulate mod p to stay inside int64
        out = (out + np.outer(left[:, k], right[k]) % p) % p
    return out


def bench_kernels(sizes, repeat: int = 3) -> list[dict]:
    p = kernels.PRIMES[0]
    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    rows = []
    for n in sizes:
        a = random_matrix(n, n, max(1, 3 * n // 4), p, seed=n)
        ranks = {b: kernels.rank_mod_p(a, p, b) for b in backends}  # also warms up the jit
        if len(set(ranks.values())) != 1:
            raise AssertionError(f"backends disagree on rank: {ranks}")
        rrefs = {b: kernels.rref_mod_p(a, p, b) for b in backends}
        base = rrefs["numpy"]
        for b, (r, piv) in rrefs.items():
            if list(piv) != list(base[1]) or not np.array_equal(r, base[0]):
                raise AssertionError(f"backend {b} disagrees on the echelon form")
        row = {"n": n, "rank": ranks["numpy"]}
        for b in backends:
            row[f"rank_{b}"] = _best(lambda: kernels.rank_mod_p(a, p, b), repeat)
            row[f"rref_{b}"] = _best(lambda: kernels.rref_mod_p(a, p, b), repeat)
        rows.append(row)
    return rows


def bench_oracle(repeat: int = 1) -> list[dict]:
    from .oracle import Sampler, index_numeric
    from .realize import build_seaweed_gl

    out = []
    for a, b in (((3, 3), (6,)), ((9, 3, 4), (4, 1, 11)), ((5, 5, 5), (15,))):
        q = build_seaweed_gl(a, b)
        q.structure_constants()
        t = _best(lambda: index_numeric(q, Sampler(0)), repeat)
        out.append({"seaweed": f"{a}|{b}", "dim": q.dim, "index": index_numeric(q, Sampler(0)), "seconds": t})
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m mrstab.bench")
    ap.add_argument("--sizes", default="40,80,160,320")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--no-oracle", action="store_true")
    args = ap.parse_args(argv)
    sizes = [int(x) for x in args.sizes.split(",")]
    print(f"default backend: {kernels.BACKEND}")
    for row in bench_kernels(sizes, args.repeat):
        parts = [f"n={row['n']:4d} rank={row['rank']:4d}"]
        for key in sorted(k for k in row if k.startswith(("rank_", "rref_"))):
            parts.append(f"{key}={row[key] * 1e3:9.2f} ms")
        if "rank_numba" in row:
            parts.append(f"speedup(rank)={row['rank_numpy'] / row['rank_numba']:.1f}x")
        print("  ".join(parts))
    if not args.no_oracle:
        for row in bench_oracle():
            print(f"index oracle {row['seaweed']}: dim {row['dim']}, index {row['index']}, {row['seconds'] * 1e3:.1f} ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
