"""Exact matrix realisations: seaweeds in gl_n, parabolics in sp_n / so_n and
the candidate stabilisers embedded in them.

Matrices are sparse dicts ``{(i, j): Fraction}`` with 0-based positions.  A
:class:`MatrixLieAlgebra` stores the reduced echelon basis of its span
(matrices flattened row by row), so two algebras are equal iff their bases
are identical, and the coordinates of a member are read off at the pivots.

Forms: so_n preserves the anti-diagonal symmetric form S (S[i, n-1-i] = 1);
sp_n preserves the anti-diagonal alternating form with S[i, n-1-i] = +1 for
i < n/2 and -1 otherwise.  In both cases g = {X : X^T S + S X = 0}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .meander import Composition, GlMrsDescriptor, seaweed_entries

Sparse = dict


class NotClosed(ValueError):
    """The span of the given matrices is not closed under the bracket."""


class NotContained(ValueError):
    pass


class OverlappingSupports(ValueError):
    pass


# --------------------------------------------------------------------------
# sparse matrices


def unit(i: int, j: int, c=1) -> Sparse:
    return {(i, j): Fraction(c)}


def add(a: Sparse, b: Sparse, s=1) -> Sparse:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + s * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def scale(a: Sparse, c) -> Sparse:
    c = Fraction(c)
    return {k: v * c for k, v in a.items()} if c else {}


def matmul(a: Sparse, b: Sparse) -> Sparse:
    rows: dict = {}
    for (k, j), v in b.items():
        rows.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), u in a.items():
        for j, v in rows.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + u * v
    return {k: v for k, v in out.items() if v}


def bracket(a: Sparse, b: Sparse) -> Sparse:
    return add(matmul(a, b), matmul(b, a), -1)


def trace(a: Sparse) -> Fraction:
    return sum((v for (i, j), v in a.items() if i == j), Fraction(0))


def trace_product(a: Sparse, b: Sparse) -> Fraction:
    """tr(a b)."""
    return sum((v * b[(j, i)] for (i, j), v in a.items() if (j, i) in b), Fraction(0))


def transpose(a: Sparse) -> Sparse:
    return {(j, i): v for (i, j), v in a.items()}


def to_dense(a: Sparse, n: int) -> list[list[Fraction]]:
    out = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in a.items():
        out[i][j] = Fraction(v)
    return out


def from_dense(m: Sequence[Sequence]) -> Sparse:
    return {(i, j): Fraction(v) for i, row in enumerate(m) for j, v in enumerate(row) if v}


def flatten(a: Sparse, n: int) -> list[Fraction]:
    v = [Fraction(0)] * (n * n)
    for (i, j), x in a.items():
        v[i * n + j] = Fraction(x)
    return v


def unflatten(v: Sequence, n: int) -> Sparse:
    return {(k // n, k % n): Fraction(x) for k, x in enumerate(v) if x}


# --------------------------------------------------------------------------
# algebras


@dataclass(frozen=True, eq=False)
class MatrixLieAlgebra:
    n: int
    basis: tuple  # sparse matrices in reduced echelon form
    pivots: tuple  # pivot position (i, j) of each basis element
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @classmethod
    def span(cls, n: int, mats: Iterable[Sparse], name: str = "", check: bool = True) -> "MatrixLieAlgebra":
        vecs = [flatten(m, n) for m in mats]
        vecs = [v for v in vecs if any(v)]
        if vecs:
            red, piv = linalg.rref(vecs)
        else:
            red, piv = [], []
        alg = cls(n, tuple(unflatten(r, n) for r in red), tuple(divmod(p, n) for p in piv), name)
        if check and not alg.is_bracket_closed():
            raise NotClosed(f"{name or 'span'} is not closed under the bracket")
        return alg

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, MatrixLieAlgebra):
            return NotImplemented
        return self.n == other.n and self.pivots == other.pivots and self.basis == other.basis

    def __hash__(self):
        return hash((self.n, self.pivots))

    def key(self) -> tuple:
        """Hashable canonical form."""
        return (self.n, tuple(tuple(sorted(b.items())) for b in self.basis))

    def coords(self, x: Sparse) -> list[Fraction] | None:
        """Coordinates of x in the basis, or None if x is not in the span."""
        c = [Fraction(x.get(p, 0)) for p in self.pivots]
        rest = dict(x)
        for ck, b in zip(c, self.basis):
            if ck:
                rest = add(rest, b, -ck)
        return None if rest else c

    def fast_coords(self, x: Sparse) -> list[Fraction]:
        """Coordinates of an element already known to lie in the span."""
        return [Fraction(x.get(p, 0)) for p in self.pivots]

    def contains(self, x: Sparse) -> bool:
        return self.coords(x) is not None

    def contains_algebra(self, other: "MatrixLieAlgebra") -> bool:
        return other.n == self.n and all(self.contains(b) for b in other.basis)

    def element(self, coeffs: Sequence) -> Sparse:
        out: Sparse = {}
        for c, b in zip(coeffs, self.basis):
            if c:
                out = add(out, b, Fraction(c))
        return out

    def is_bracket_closed(self) -> bool:
        try:
            self.structure_constants()
        except NotClosed:
            return False
        return True

    def structure_constants(self) -> list:
        """table[i][j] = sparse coordinate dict {k: c} of [b_i, b_j], for i < j."""
        if "sc" not in self._cache:
            d = self.dim
            table = [[None] * d for _ in range(d)]
            for i in range(d):
                for j in range(i + 1, d):
                    c = self.coords(bracket(self.basis[i], self.basis[j]))
                    if c is None:
                        raise NotClosed(f"[b{i}, b{j}] leaves {self.name or 'the span'}")
                    table[i][j] = {k: v for k, v in enumerate(c) if v}
            self._cache["sc"] = table
        return self._cache["sc"]

    def as_subspace(self) -> linalg.Subspace:
        return linalg.Subspace(self.n * self.n, tuple(tuple(flatten(b, self.n)) for b in self.basis))

    def gram(self) -> list[list[Fraction]]:
        """Trace form tr(b_i b_j) on the basis."""
        return [[trace_product(a, b) for b in self.basis] for a in self.basis]

    def trace_form_nondegenerate(self) -> bool:
        return linalg.rank_of(self.gram()) == self.dim if self.dim else True

    def center(self) -> "MatrixLieAlgebra":
        d = self.dim
        sc = self.structure_constants()
        # z = sum z_i b_i is central iff sum_i z_i [b_i, b_j] = 0 for all j
        rows = []
        for j in range(d):
            for k in range(d):
                row = [Fraction(0)] * d
                for i in range(d):
                    if i < j:
                        row[i] = sc[i][j].get(k, Fraction(0))
                    elif i > j:
                        row[i] = -sc[j][i].get(k, Fraction(0))
                if any(row):
                    rows.append(row)
        ker = linalg.kernel_of(rows, d) if rows else linalg.Subspace.full(d)
        return MatrixLieAlgebra.span(self.n, [self.element(v) for v in ker.basis], f"center({self.name})", check=False)

    def derived(self) -> "MatrixLieAlgebra":
        sc = self.structure_constants()
        mats = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if sc[i][j]:
                    mats.append(self.element([sc[i][j].get(k, 0) for k in range(self.dim)]))
        return MatrixLieAlgebra.span(self.n, mats, f"[{self.name},{self.name}]", check=False)

    def is_abelian(self) -> bool:
        return all(not v for row in self.structure_constants() for v in row if v is not None)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "basis": [
                [[i + 1, j + 1, v.numerator, v.denominator] for (i, j), v in sorted(b.items())]
                for b in self.basis
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MatrixLieAlgebra":
        n = data["n"]
        mats = [{(i - 1, j - 1): Fraction(p, q) for i, j, p, q in b} for b in data["basis"]]
        return cls.span(n, mats, data.get("name", ""))


# --------------------------------------------------------------------------
# seaweeds in gl_n


def build_seaweed_gl(a, b) -> MatrixLieAlgebra:
    a, b = Composition.of(a), Composition.of(b)
    n = a.total
    mats = [unit(i, j) for i, j in seaweed_entries(a, b)]
    return MatrixLieAlgebra.span(n, mats, f"q({a}|{b})", check=False)


def build_gl(n: int) -> MatrixLieAlgebra:
    return MatrixLieAlgebra.span(n, [unit(i, j) for i in range(n) for j in range(n)], f"gl_{n}", check=False)


def _interval_copy(k: int, l: int, lo: int, r: int, flip: bool) -> tuple[int, int]:
    if flip:
        return lo - 1 + r - 1 - k, lo - 1 + r - 1 - l
    return lo - 1 + k, lo - 1 + l


def embed_mrs_gl(d: GlMrsDescriptor, n: int, flips: dict | None = None) -> MatrixLieAlgebra:
    """Block-diagonal copies of each GL_r factor on its intervals.

    ``flips`` maps (factor index, interval index) to True where that copy is
    conjugated by the order-reversing permutation of the interval.
    """
    flips = flips or {}
    used: set = set()
    mats = []
    for fi, f in enumerate(d.factors):
        if f.scalar_positions:
            pos = {v - 1 for v in f.scalar_positions}
            if used & pos:
                raise OverlappingSupports(f"scalar factor on {sorted(pos)}")
            used |= pos
            mats.append({(v, v): Fraction(1) for v in pos})
            continue
        r = f.rank
        cover = set()
        for lo, hi in f.intervals:
            if hi - lo + 1 != r or lo < 1 or hi > n:
                raise ValueError(f"interval [{lo},{hi}] does not fit GL{r} in gl_{n}")
            cover |= set(range(lo - 1, hi))
        if used & cover:
            raise OverlappingSupports(f"GL{r} factor on {f.intervals}")
        used |= cover
        for k in range(r):
            for l in range(r):
                m = {}
                for ii, (lo, _) in enumerate(f.intervals):
                    m[_interval_copy(k, l, lo, r, flips.get((fi, ii), False))] = Fraction(1)
                mats.append(m)
    return MatrixLieAlgebra.span(n, mats, "M(" + d.type_string() + ")")


# --------------------------------------------------------------------------
# sp_n and so_n with anti-diagonal forms


def form_matrix(eps: int, n: int) -> Sparse:
    if eps == 1:
        return {(i, n - 1 - i): Fraction(1) for i in range(n)}
    if n % 2:
        raise ValueError("sp_n needs n even")
    return {(i, n - 1 - i): Fraction(1 if i < n // 2 else -1) for i in range(n)}


def form_inverse(eps: int, n: int) -> Sparse:
    s = form_matrix(eps, n)
    # S^2 = eps * I for these forms, so S^{-1} = eps * S
    return scale(s, eps)


def mirror(eps: int, n: int, y: Sparse) -> Sparse:
    """sigma(Y) = -S^{-1} Y^T S; Y + sigma(Y) lies in g^eps for any Y."""
    s = form_matrix(eps, n)
    si = form_inverse(eps, n)
    return scale(matmul(matmul(si, transpose(y)), s), -1)


def ambient_basis(eps: int, n: int) -> list[Sparse]:
    """S^{-1}(E_ij - E_ji) (so) or S^{-1}(E_ij + E_ji) (sp); disjoint supports."""
    si = form_inverse(eps, n)
    out = []
    for i in range(n):
        for j in range(i, n):
            if eps == 1 and i == j:
                continue
            a = add(unit(i, j), unit(j, i), -eps)
            out.append(matmul(si, a))
    return out


def build_classical(eps: int, n: int) -> MatrixLieAlgebra:
    name = ("so" if eps == 1 else "sp") + f"_{n}"
    return MatrixLieAlgebra.span(n, ambient_basis(eps, n), name, check=False)


def flag_dims(a) -> list[int]:
    out, s = [], 0
    for p in Composition.of(a).parts:
        s += p
        out.append(s)
    return out


def _preserves_flag(x: Sparse, dims: Sequence[int]) -> bool:
    return all(not (j < r <= i) for (i, j) in x for r in dims)


def build_parabolic_iso(eps: int, n: int, a) -> MatrixLieAlgebra:
    """Stabiliser in g^eps of the isotropic flag span(e_1..e_{r_1}) < ... < span(e_1..e_r)."""
    a = Composition.of(a)
    if a.total > n // 2:
        raise ValueError(f"isotropic flag of dimension {a.total} in an {n}-dimensional space")
    dims = flag_dims(a)
    mats = [x for x in ambient_basis(eps, n) if _preserves_flag(x, dims)]
    name = f"p^{'+' if eps == 1 else '-'}_{n}({a})"
    return MatrixLieAlgebra.span(n, mats, name, check=False)


def sym_form_block(lo: int, k: int) -> list[Sparse]:
    """so_k preserving the anti-diagonal symmetric form on coordinates lo..lo+k-1."""
    out = []
    for i in range(k):
        for j in range(i + 1, k):
            # S^{-1}(E_ij - E_ji) with S anti-diagonal ones
            out.append({(lo + k - 1 - i, lo + j): Fraction(1), (lo + k - 1 - j, lo + i): Fraction(-1)})
    return out


def alt_form_block(lo: int, k: int) -> list[Sparse]:
    """sp_k preserving the signed anti-diagonal alternating form on lo..lo+k-1."""
    half = k // 2
    out = []
    for i in range(k):
        for j in range(i, k):
            a = add(unit(i, j), unit(j, i))
            # S A spans the same algebra as S^{-1} A = -S A
            m = {}
            for (p, q), v in a.items():
                row = k - 1 - p
                sign = -1 if p < half else 1
                m[(lo + row, lo + q)] = m.get((lo + row, lo + q), 0) + sign * v
            out.append({key: Fraction(v) for key, v in m.items() if v})
    return out


def levi_embed(eps: int, n: int, ys: Iterable[Sparse]) -> list[Sparse]:
    """Y + sigma(Y) for matrices supported in the upper-left Levi blocks."""
    return [add(y, mirror(eps, n, y)) for y in ys]


def middle_block(eps_mid: int, n: int, r: int) -> list[Sparse]:
    """The classical algebra of the middle block on coordinates r..n-r-1, using
    the restriction of the ambient form (which is again anti-diagonal)."""
    k = n - 2 * r
    if k <= 0:
        return []
    return [{(i + r, j + r): v for (i, j), v in x.items()} for x in ambient_basis(eps_mid, k)]
