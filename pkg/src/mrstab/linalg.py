"""Exact rational linear algebra.

Matrices are nested sequences of ``int``/``Fraction`` (or a :class:`RatMatrix`).
Nothing in this module touches floating point.  Row reduction is done
fraction-free on integer rows; ranks are computed with a certified
multi-modular method (see :func:`rank_of`), with Bareiss elimination as the
independent reference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels


class DegenerateGram(ArithmeticError):
    """The Gram matrix of a bilinear form on a given basis is singular."""


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class RatMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major Fractions

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionMismatch("matrix dimensions must be positive")
        cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(len(rows), cols, tuple(Fraction(x) for r in rows for x in r))

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]


def _as_rows(m) -> list[list]:
    if isinstance(m, RatMatrix):
        return m.tolist()
    return [list(r) for r in m]


def _ncols(m, rows) -> int:
    if isinstance(m, RatMatrix):
        return m.cols
    return len(rows[0]) if rows else 0


def integer_row(row: Iterable) -> list[int]:
    """Scale a rational row to a primitive integer row (same line through 0)."""
    row = [Fraction(x) for x in row]
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _int_rref(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free Gauss-Jordan.  Rows are kept primitive; pivots positive."""
    rows = [r for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        best = -1
        for i in range(r, len(rows)):
            v = rows[i][c]
            if v and (best < 0 or abs(v) < abs(rows[best][c])):
                best = i
                if abs(v) == 1:
                    break
        if best < 0:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        if prow[c] < 0:
            prow = [-x for x in prow]
            rows[r] = prow
        pc = prow[c]
        for i in range(len(rows)):
            if i == r:
                continue
            a = rows[i][c]
            if not a:
                continue
            g = math.gcd(a, pc)
            s, t = pc // g, a // g
            new = [s * x - t * y for x, y in zip(rows[i], prow)]
            h = 0
            for x in new:
                h = math.gcd(h, x)
                if h == 1:
                    break
            if h > 1:
                new = [x // h for x in new]
            rows[i] = new
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    rows = _as_rows(m)
    ncols = _ncols(m, rows)
    ints = [integer_row(r) for r in rows]
    red, piv = _int_rref(ints, ncols)
    out = []
    for row, c in zip(red, piv):
        d = row[c]
        out.append([Fraction(x, d) for x in row])
    return out, piv


# --------------------------------------------------------------------------
# rank


def rank_bareiss(m) -> int:
    """Rank by Bareiss fraction-free elimination (reference implementation)."""
    rows = [integer_row(r) for r in _as_rows(m)]
    if not rows:
        return 0
    ncols = len(rows[0])
    nrows = len(rows)
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), -1)
        if piv < 0:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        for i in range(r + 1, nrows):
            a = rows[i][c]
            rows[i] = [(p * x - a * y) // prev for x, y in zip(rows[i], rows[r])]
        prev = p
        r += 1
    return r


def _hadamard_bound(ints: list[list[int]], k: int) -> int:
    """Upper bound for |det| of any k x k minor of the integer matrix."""
    norms = sorted((math.isqrt(sum(x * x for x in row)) + 1 for row in ints), reverse=True)
    bound = 1
    for v in norms[:k]:
        bound *= v
    return bound


def rank_of(m, backend: str | None = None) -> int:
    """Exact rank over Q.

    Rows are scaled to integers, then ranks mod 31-bit primes are taken until
    the product of primes exceeds a Hadamard bound for the (r+1)-minors, where
    r is the largest modular rank seen.  Every (r+1)-minor is then divisible
    by that product and smaller than it, hence zero, so rank = r.
    """
    if isinstance(m, np.ndarray) and m.dtype.kind in "iu":
        ints = [r for r in m.tolist() if any(r)]
        ncols = m.shape[1]
    else:
        ints = [integer_row(r) for r in _as_rows(m)]
        ints = [r for r in ints if any(r)]
        ncols = len(ints[0]) if ints else 0
    if not ints:
        return 0
    full = min(len(ints), ncols)
    r = 0
    prod = 1
    for p in kernels.PRIMES:
        r = max(r, kernels.rank_mod_p(kernels.reduce_mod_p(ints, p), p, backend))
        prod *= p
        if r == full or prod > _hadamard_bound(ints, r + 1):
            return r
    return rank_bareiss(ints)


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim stored by its reduced echelon basis."""

    ambient_dim: int
    basis: tuple  # tuple of tuples of Fraction, reduced echelon form

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
        if not vectors:
            return cls(ambient_dim, ())
        red, _ = rref(vectors)
        return cls(ambient_dim, tuple(tuple(r) for r in red))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(identity(ambient_dim), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def coordinates(self, v: Sequence) -> list[Fraction] | None:
        """Coordinates of v in the echelon basis, or None if v is not in the span."""
        piv = self.pivots()
        coeffs = [Fraction(v[c]) for c in piv]
        rest = [Fraction(x) for x in v]
        for a, row in zip(coeffs, self.basis):
            if a:
                rest = [x - a * y for x, y in zip(rest, row)]
        if any(rest):
            return None
        return coeffs

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_ambient(self, other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)


def _check_ambient(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {a.ambient_dim} and {b.ambient_dim} differ")


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def kernel_of(m, ncols: int | None = None) -> Subspace:
    """Right null space of m.  ``ncols`` is needed only when m has no rows."""
    rows = _as_rows(m)
    if ncols is None:
        ncols = _ncols(m, rows)
    if not rows:
        return Subspace.full(ncols)
    red, piv = rref(rows)
    pivset = set(piv)
    vecs = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        vecs.append(v)
    return Subspace.span(vecs, ncols)


def annihilator(s: Subspace) -> Subspace:
    """{w : w . v = 0 for all v in s} under the standard dot product."""
    return kernel_of(list(s.basis), s.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    eqs = list(annihilator(a).basis) + list(annihilator(b).basis)
    return kernel_of(eqs, a.ambient_dim)


# --------------------------------------------------------------------------
# solving and projection


def solve(a, b: Sequence) -> list[Fraction] | None:
    """Some solution x of a x = b, or None if the system is inconsistent."""
    rows = _as_rows(a)
    ncols = _ncols(a, rows)
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    red, piv = rref(aug)
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return x


def gram_matrix(vectors: Sequence[Sequence], form) -> list[list[Fraction]]:
    f = _form_callable(form)
    return [[Fraction(f(u, v)) for v in vectors] for u in vectors]


def _form_callable(form) -> Callable:
    if form is None:
        return dot
    if callable(form):
        return form
    g = [[Fraction(x) for x in row] for row in form]
    return lambda u, v: sum(
        (u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]),
        Fraction(0),
    )


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(u, v) if x and y), Fraction(0))


def project_against(x: Sequence, t_basis: Sequence[Sequence], form=None) -> list[Fraction]:
    """The component of x orthogonal to span(t_basis) with respect to ``form``.

    ``form`` is a symmetric bilinear form given as a callable ``(u, v) -> value``
    or as its matrix; ``None`` means the dot product.  Raises
    :class:`DegenerateGram` if the form is degenerate on span(t_basis).
    """
    x = [Fraction(v) for v in x]
    if not t_basis:
        return x
    f = _form_callable(form)
    g = gram_matrix(t_basis, f)
    if rank_of(g) < len(t_basis):
        raise DegenerateGram("form is degenerate on the given subspace")
    rhs = [Fraction(f(x, t)) for t in t_basis]
    a = solve(g, rhs)
    out = list(x)
    for ak, t in zip(a, t_basis):
        if ak:
            out = [o - ak * ti for o, ti in zip(out, t)]
    return out


def to_numpy_mod_p(m, p: int) -> np.ndarray:
    """Residue matrix of a rational matrix (denominators must be prime to p)."""
    rows = _as_rows(m)
    out = np.zeros((len(rows), len(rows[0]) if rows else 0), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            x = Fraction(x)
            if x:
                out[i, j] = x.numerator % p * pow(x.denominator, -1, p) % p
    return out
