"""Modular-arithmetic inner loops.

Every kernel here works on ``int64`` arrays whose entries are residues modulo a
prime ``p < 2**31``, so a product of two residues fits in a signed 64-bit
integer.  Each kernel has a numba ``@njit`` body and a vectorised numpy body;
the numba one is used unless numba is missing or the environment variable
``MRSTAB_DISABLE_NUMBA`` is set to a non-empty value other than ``0``.
"""

from __future__ import annotations

import os

import numpy as np


def _numba_requested() -> bool:
    flag = os.environ.get("MRSTAB_DISABLE_NUMBA", "")
    return flag in ("", "0")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by MRSTAB_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised through the env flag
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _primes_below(bound: int, count: int) -> list[int]:
    sieve = np.ones(50000, dtype=bool)
    sieve[:2] = False
    for q in range(2, 224):
        if sieve[q]:
            sieve[q * q::q] = False
    small = [int(q) for q in np.flatnonzero(sieve)]
    out = []
    cand = bound - 1
    while len(out) < count:
        if all(cand % q for q in small if q * q <= cand):
            out.append(cand)
        cand -= 2 if cand % 2 else 1
    return out


# 31-bit primes, largest first.
PRIMES: list[int] = _primes_below(2 ** 31, 64)


# --------------------------------------------------------------------------
# numba bodies


@njit(cache=True)
def _powmod_nb(a, e, p):
    r = 1
    a = a % p
    while e > 0:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


@njit(cache=True)
def _rref_mod_p_nb(a, p):
    m, n = a.shape
    pivots = np.empty(min(m, n), dtype=np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(n):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        inv = _powmod_nb(a[r, c], p - 2, p)
        for k in range(n):
            a[r, k] = (a[r, k] * inv) % p
        for i in range(m):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for k in range(n):
                        a[i, k] = (a[i, k] - f * a[r, k]) % p
        pivots[r] = c
        r += 1
    return r, pivots[:r]


@njit(cache=True)
def _rank_mod_p_nb(a, p):
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, n):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        inv = _powmod_nb(a[r, c], p - 2, p)
        for k in range(c, n):
            a[r, k] = (a[r, k] * inv) % p
        for i in range(r + 1, m):
            f = a[i, c]
            if f != 0:
                for k in range(c, n):
                    a[i, k] = (a[i, k] - f * a[r, k]) % p
        r += 1
    return r


# --------------------------------------------------------------------------
# numpy bodies


def _rref_mod_p_np(a: np.ndarray, p: int):
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.flatnonzero(col)
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return r, np.array(pivots, dtype=np.int64)


def _rank_mod_p_np(a: np.ndarray, p: int) -> int:
    m, n = a.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = a[r + 1:, c]
        rows = np.flatnonzero(below) + r + 1
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:])) % p
        r += 1
    return r


# --------------------------------------------------------------------------
# public entry points


def reduce_mod_p(rows, p: int) -> np.ndarray:
    """Residues of an integer matrix (nested sequences of Python ints) mod ``p``."""
    return np.array([[int(x) % p for x in row] for row in rows], dtype=np.int64).reshape(
        len(rows), len(rows[0]) if len(rows) else 0
    )


def rank_mod_p(a: np.ndarray, p: int, backend: str | None = None) -> int:
    """Rank over F_p of a residue matrix.  ``a`` is left untouched."""
    backend = backend or BACKEND
    work = np.array(a, dtype=np.int64, copy=True)
    if work.size == 0:
        return 0
    if backend == "numba" and HAVE_NUMBA:
        return int(_rank_mod_p_nb(work, p))
    return _rank_mod_p_np(work, p)


def rref_mod_p(a: np.ndarray, p: int, backend: str | None = None):
    """Reduced row echelon form over F_p; returns ``(rref, pivot_columns)``."""
    backend = backend or BACKEND
    work = np.array(a, dtype=np.int64, copy=True)
    if work.size == 0:
        return work, []
    if backend == "numba" and HAVE_NUMBA:
        r, piv = _rref_mod_p_nb(work, p)
    else:
        r, piv = _rref_mod_p_np(work, p)
    return work[:r], [int(c) for c in piv]


def nullspace_mod_p(a: np.ndarray, p: int, backend: str | None = None) -> np.ndarray:
    """Basis (as rows) of the right null space over F_p."""
    n = a.shape[1]
    red, piv = rref_mod_p(a, p, backend)
    free = [c for c in range(n) if c not in set(piv)]
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-red[i, f]) % p
    return out
