"""Parabolic subalgebras of sp_n and so_n stabilising an isotropic flag.

p^eps_n(a) is the stabiliser in so_n (eps = +1) or sp_n (eps = -1) of the
isotropic flag with successive quotients of dimensions a = (a_1, ..., a_t),
r = a_1 + ... + a_t <= n/2.  This module holds the closed-form answers
(quasi-reductivity and the type of the maximal reductive stabiliser) and the
block constructions realising them as matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .meander import Composition
from .realize import (
    MatrixLieAlgebra,
    alt_form_block,
    build_parabolic_iso,
    levi_embed,
    middle_block,
    sym_form_block,
)
from .reductive import ReductiveType


class NotQuasiReductive(ValueError):
    pass


class NoEmbedding(ValueError):
    pass


@dataclass(frozen=True)
class IsoParabolic:
    epsilon: int
    n: int
    a: Composition

    def __post_init__(self):
        object.__setattr__(self, "a", Composition.of(self.a))
        if self.epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 (so) or -1 (sp)")
        if self.epsilon == -1 and self.n % 2:
            raise ValueError("sp_n needs n even")
        if self.a.total > self.n // 2:
            raise ValueError(f"flag dimension {self.a.total} exceeds n/2 for n={self.n}")

    @property
    def r(self) -> int:
        return self.a.total

    @property
    def t(self) -> int:
        return len(self.a.parts)

    @property
    def ell(self) -> int:
        return self.n // 2

    @property
    def name(self) -> str:
        return f"{'so' if self.epsilon == 1 else 'sp'}_{self.n} a=({self.a})"

    def realize(self) -> MatrixLieAlgebra:
        return build_parabolic_iso(self.epsilon, self.n, self.a)


@dataclass(frozen=True)
class Summand:
    kind: str  # "so", "sp" or "C" (one-dimensional centre)
    size: int

    def type(self) -> ReductiveType:
        if self.kind == "so":
            return ReductiveType.so(self.size)
        if self.kind == "sp":
            return ReductiveType.sp(self.size)
        return ReductiveType.torus(self.size)

    def __str__(self):
        return "ℂ" if self.kind == "C" else f"{self.kind}_{self.size}"


@dataclass(frozen=True)
class ClassicalMrs:
    summands: tuple
    case: int = 0  # case number of the orthogonal formula, 0 for sp
    type: ReductiveType = field(default_factory=ReductiveType.zero)

    @classmethod
    def of(cls, summands, case=0) -> "ClassicalMrs":
        summands = tuple(summands)
        t = ReductiveType.zero()
        for s in summands:
            t = t + s.type()
        return cls(summands, case, t)

    @property
    def rank(self) -> int:
        return self.type.rank

    def formula(self) -> str:
        return " ⊕ ".join(map(str, self.summands)) or "0"


# --------------------------------------------------------------------------
# quasi-reductivity


def has_property_star(a) -> bool:
    """No adjacent pair (a_i, a_{i+1}) with a_i odd and a_{i+1} even."""
    parts = Composition.of(a).parts if a else ()
    return not any(x % 2 == 1 and y % 2 == 0 for x, y in zip(parts, parts[1:]))


def has_paired_star(a) -> bool:
    """No adjacent (odd, even) pair whose odd part leaves an odd partial sum.

    An odd part that closes an odd pair (partial sum even) may be followed by
    an even part: so_8 with a = (1, 1, 2) has a toral generic stabiliser.
    This is the predicate that matches the numerical stabiliser computation.
    """
    parts = Composition.of(a).parts if a else ()
    total = 0
    for x, y in zip(parts, parts[1:]):
        total += x
        if x % 2 == 1 and y % 2 == 0 and total % 2 == 1:
            return False
    return True


def a_prime(p: IsoParabolic) -> tuple:
    """a without its last part when r is odd and r = n/2, else a."""
    if p.r % 2 == 1 and 2 * p.r == p.n:
        return p.a.parts[:-1]
    return p.a.parts


def is_qr_so(p: IsoParabolic) -> bool:
    if p.epsilon != 1:
        raise ValueError("is_qr_so needs an orthogonal parabolic")
    return has_paired_star(a_prime(p))


def is_qr(p: IsoParabolic) -> bool:
    return True if p.epsilon == -1 else is_qr_so(p)


# --------------------------------------------------------------------------
# types


def mrs_sp(p: IsoParabolic) -> ClassicalMrs:
    """so_{a_1} + ... + so_{a_t} + sp_{n-2r}."""
    if p.epsilon != -1:
        raise ValueError("mrs_sp needs a symplectic parabolic")
    return ClassicalMrs.of([Summand("so", x) for x in p.a.parts] + [Summand("sp", p.n - 2 * p.r)])


def _pairs(parts: tuple, s: int) -> list[tuple[int, ...]]:
    """Groups making up r_s: even parts alone, odd parts in consecutive pairs
    closing at an even partial sum."""
    groups = []
    total = 0
    for i in range(s):
        x = parts[i]
        total += x
        if x % 2 == 0:
            groups.append((i,))
        elif total % 2 == 0 and i > 0 and parts[i - 1] % 2 == 1:
            groups.append((i - 1, i))
    return groups


def r_s_summand(a, s: int) -> list[Summand]:
    parts = Composition.of(a).parts if a else ()
    if not 0 <= s <= len(parts):
        raise ValueError(f"s={s} out of range for {len(parts)} parts")
    out = []
    for g in _pairs(parts, s):
        if len(g) == 1:
            out.append(Summand("sp", parts[g[0]]))
        else:
            out.extend(Summand("sp", parts[i] - 1) for i in g)
    return out


def so_case(p: IsoParabolic) -> int:
    if p.r % 2 == 0:
        return 1
    if 2 * p.r != p.n:
        return 2
    last = p.a.parts[-1]
    if last == 1:
        return 3
    return 4 if last % 2 else 5


def mrs_so(p: IsoParabolic) -> ClassicalMrs:
    if p.epsilon != 1:
        raise ValueError("mrs_so needs an orthogonal parabolic")
    if not is_qr_so(p):
        raise NotQuasiReductive(f"{p.name} is not quasi-reductive")
    a, t, n, r = p.a.parts, p.t, p.n, p.r
    case = so_case(p)
    if case == 1:
        out = r_s_summand(a, t) + [Summand("so", n - 2 * r)]
    elif case == 2:
        out = r_s_summand(a, t - 1) + [Summand("sp", a[-1] - 1), Summand("so", n - 2 * r - 1)]
    elif case == 3:
        out = r_s_summand(a, t - 1) + [Summand("C", 1)]
    elif case == 4:
        out = r_s_summand(a, t - 1) + [Summand("sp", a[-1] - 3)]
    else:
        out = r_s_summand(a, t - 2) + [Summand("sp", a[-2] - 1), Summand("sp", a[-1] - 2)]
    return ClassicalMrs.of(out, case)


def mrs_classical(p: IsoParabolic) -> ClassicalMrs:
    return mrs_sp(p) if p.epsilon == -1 else mrs_so(p)


# --------------------------------------------------------------------------
# embeddings


def _block_starts(a: tuple) -> list[int]:
    out, s = [], 0
    for x in a:
        out.append(s)
        s += x
    return out


def embed_mrs_sp(p: IsoParabolic) -> MatrixLieAlgebra:
    """so_{a_i} on Levi block i (anti-diagonal symmetric form), sp_{n-2r} in the middle."""
    if p.epsilon != -1:
        raise ValueError("embed_mrs_sp needs a symplectic parabolic")
    mats = []
    for lo, k in zip(_block_starts(p.a.parts), p.a.parts):
        mats += levi_embed(-1, p.n, sym_form_block(lo, k))
    mats += middle_block(-1, p.n, p.r)
    return MatrixLieAlgebra.span(p.n, mats, f"M({p.name})")


def _vector_stabiliser(mats: list, v: dict, n: int) -> list:
    """Elements X of span(mats) with X v = 0 (v a sparse vector {index: value})."""
    if not mats:
        return []
    rows = []
    for i in range(n):
        row = [sum((Fraction(x.get((i, j), 0)) * c for j, c in v.items()), Fraction(0)) for x in mats]
        if any(row):
            rows.append(row)
    if not rows:
        return mats
    ker = linalg.kernel_of(rows, len(mats))
    out = []
    for coeffs in ker.basis:
        m: dict = {}
        for c, x in zip(coeffs, mats):
            if c:
                for key, val in x.items():
                    m[key] = m.get(key, 0) + c * val
        out.append({k: w for k, w in m.items() if w})
    return out


def embed_mrs_so(p: IsoParabolic) -> MatrixLieAlgebra:
    """Block construction for the orthogonal cases (1) and (2).

    Even parts carry sp_{a_i} on their whole Levi block; an odd pair carries
    sp_{a-1} on the first a-1 lines of each of its two blocks; in case (2) the
    last block carries sp_{a_t - 1} on its first a_t - 1 lines and the middle
    block so_{n-2r} is cut down to the stabiliser of a non-isotropic vector.
    """
    case = so_case(p)
    if not is_qr_so(p):
        raise NotQuasiReductive(f"{p.name} is not quasi-reductive")
    if case not in (1, 2):
        raise NoEmbedding(f"no explicit embedding for orthogonal case ({case})")
    a, n, r = p.a.parts, p.n, p.r
    starts = _block_starts(a)
    s = len(a) if case == 1 else len(a) - 1
    mats = []
    for g in _pairs(a, s):
        if len(g) == 1:
            i = g[0]
            mats += levi_embed(1, n, alt_form_block(starts[i], a[i]))
        else:
            for i in g:
                mats += levi_embed(1, n, alt_form_block(starts[i], a[i] - 1))
    mid = middle_block(1, n, r)
    if case == 2:
        mats += levi_embed(1, n, alt_form_block(starts[-1], a[-1] - 1))
        k = n - 2 * r
        if k % 2:
            v = {r + k // 2: Fraction(1)}
        else:
            v = {r: Fraction(1), n - 1 - r: Fraction(1)}
        mid = _vector_stabiliser(mid, v, n)
    mats += mid
    return MatrixLieAlgebra.span(n, mats, f"M({p.name})")


def embed_mrs_classical(p: IsoParabolic) -> MatrixLieAlgebra:
    return embed_mrs_sp(p) if p.epsilon == -1 else embed_mrs_so(p)


def all_parabolics(eps: int, n: int) -> list[IsoParabolic]:
    """Every flag type a with 1 <= r <= n/2."""
    from .meander import compositions

    out = []
    for r in range(1, n // 2 + 1):
        for a in compositions(r):
            out.append(IsoParabolic(eps, n, a))
    return out
