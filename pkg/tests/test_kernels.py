import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mrstab import kernels

P = kernels.PRIMES[0]
needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba unavailable")


def residue_matrices():
    return st.integers(1, 8).flatmap(
        lambda r: st.integers(1, 8).flatmap(
            lambda c: st.lists(st.lists(st.integers(0, 5), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_primes_are_distinct_31_bit():
    assert len(set(kernels.PRIMES)) == len(kernels.PRIMES) == 64
    assert all(2 ** 30 < p < 2 ** 31 for p in kernels.PRIMES)
    assert all(pow(2, p - 1, p) == 1 for p in kernels.PRIMES)


@needs_numba
@given(residue_matrices())
def test_backends_agree(rows):
    a = kernels.reduce_mod_p(rows, P)
    assert kernels.rank_mod_p(a, P, "numba") == kernels.rank_mod_p(a, P, "numpy")
    r1, p1 = kernels.rref_mod_p(a, P, "numba")
    r2, p2 = kernels.rref_mod_p(a, P, "numpy")
    assert p1 == p2 and np.array_equal(r1, r2)


@given(residue_matrices())
def test_nullspace_is_kernel(rows):
    a = kernels.reduce_mod_p(rows, P)
    ns = kernels.nullspace_mod_p(a, P)
    assert ns.shape[0] + kernels.rank_mod_p(a, P) == a.shape[1]
    for v in ns:
        assert all(sum(int(x) * int(y) for x, y in zip(row, v)) % P == 0 for row in a)


def test_input_not_modified():
    a = kernels.reduce_mod_p([[1, 2], [3, 4]], P)
    before = a.copy()
    kernels.rank_mod_p(a, P)
    kernels.rref_mod_p(a, P)
    assert np.array_equal(a, before)


def test_env_flag_selects_numpy():
    env = dict(os.environ, MRSTAB_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from mrstab import kernels; print(kernels.BACKEND, kernels.HAVE_NUMBA)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["numpy", "False"]


def test_bench_smoke():
    from mrstab import bench

    rows = bench.bench_kernels([12], repeat=1)
    assert rows[0]["rank"] == 9
