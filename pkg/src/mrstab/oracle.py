"""Exact coadjoint-stabiliser oracle.

A linear form xi on a matrix Lie algebra q is stored by its values
c_k = xi(b_k) on the echelon basis of q.  Its canonical matrix representative
y (with xi(x) = tr(x y)) puts c_k at the transpose of the pivot of b_k.

Everything here is exact; randomness only chooses which forms to look at
and is fully determined by a :class:`Sampler` seed.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from . import kernels, linalg, polys
from .realize import MatrixLieAlgebra, NotContained, Sparse, bracket, trace_product
from .reductive import ReductiveType


class ReductivityCheckFailed(AssertionError):
    pass


class NotRegular(RuntimeError):
    pass


@dataclass
class Sampler:
    seed: int = 0
    coefficient_range: int = 32
    max_resamples: int = 8
    k: int = 5
    _rng: random.Random = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    @property
    def rng(self) -> random.Random:
        return self._rng

    def vector(self, d: int) -> list[int]:
        r = self.coefficient_range
        return [self._rng.randint(-r, r) for _ in range(d)]

    def child(self, key) -> "Sampler":
        """Independent sampler for a sub-task, derived from (seed, key)."""
        h = hashlib.sha256(f"{self.seed}:{key}".encode()).digest()
        return Sampler(int.from_bytes(h[:8], "big"), self.coefficient_range, self.max_resamples, self.k)


# --------------------------------------------------------------------------
# linear forms


@dataclass(frozen=True)
class LinearForm:
    on: MatrixLieAlgebra
    values: tuple  # xi(b_k)

    @classmethod
    def from_matrix(cls, q: MatrixLieAlgebra, y: Sparse) -> "LinearForm":
        return cls(q, tuple(trace_product(b, y) for b in q.basis))

    def rep(self) -> Sparse:
        return {(j, i): Fraction(c) for (i, j), c in zip(self.on.pivots, self.values) if c}

    def __call__(self, x: Sparse) -> Fraction:
        return sum((Fraction(c) * v for c, v in zip(self.values, self.on.fast_coords(x)) if c and v), Fraction(0))


def _structure_tensor(q: MatrixLieAlgebra):
    """(T, den): integer array with T[i, j, k] = den * c_ij^k, antisymmetric in i, j."""
    if "tensor" in q._cache:
        return q._cache["tensor"]
    d = q.dim
    sc = q.structure_constants()
    den = 1
    for i in range(d):
        for j in range(i + 1, d):
            for v in sc[i][j].values():
                den = lcm(den, v.denominator)
    big = max((abs(v) * den for i in range(d) for j in range(i + 1, d) for v in sc[i][j].values()), default=0)
    dtype = np.int64 if big < 2 ** 40 else object
    t = np.zeros((d, d, d), dtype=dtype)
    for i in range(d):
        for j in range(i + 1, d):
            for k, v in sc[i][j].items():
                x = int(v * den)
                t[i, j, k] = x
                t[j, i, k] = -x
    q._cache["tensor"] = (t, den)
    q._cache["tensor_max"] = int(big)
    return t, den


def _int_values(values: Sequence) -> list[int]:
    """Scale form values to integers (the stabiliser does not change)."""
    return linalg.integer_row(values) if any(values) else [0] * len(values)


def _contraction_int(q: MatrixLieAlgebra, values: Sequence) -> np.ndarray:
    t, _ = _structure_tensor(q)
    c = _int_values(values)
    bound = max((abs(x) for x in c), default=0) * q.dim * q._cache["tensor_max"]
    if t.dtype == object or bound >= 2 ** 62:
        cv = np.array(c, dtype=object)
        return np.tensordot(t.astype(object), cv, axes=([2], [0]))
    return t @ np.array(c, dtype=np.int64)


def contraction_form(q: MatrixLieAlgebra, xi: LinearForm | Sequence) -> list[list[Fraction]]:
    """[xi([b_i, b_j])]_ij."""
    values = xi.values if isinstance(xi, LinearForm) else tuple(xi)
    t, den = _structure_tensor(q)
    c = [Fraction(v) for v in values]
    out = []
    for i in range(q.dim):
        out.append([sum((Fraction(int(t[i, j, k])) * c[k] for k in range(q.dim) if t[i, j, k] and c[k]), Fraction(0)) / den
                    for j in range(q.dim)])
    return out


def _rank_of_contraction(q: MatrixLieAlgebra, values) -> int:
    m = _contraction_int(q, values)
    if m.dtype == object:
        return linalg.rank_of(m.tolist())
    return linalg.rank_of(m)


def stabiliser_coords(q: MatrixLieAlgebra, values) -> linalg.Subspace:
    m = _contraction_int(q, values)
    return linalg.kernel_of(m.tolist(), q.dim)


def stabiliser_of(q: MatrixLieAlgebra, xi: LinearForm | Sequence) -> MatrixLieAlgebra:
    values = xi.values if isinstance(xi, LinearForm) else tuple(xi)
    ker = stabiliser_coords(q, values)
    return MatrixLieAlgebra.span(q.n, [q.element(v) for v in ker.basis], f"stab({q.name})", check=True)


def stabiliser_dim(q: MatrixLieAlgebra, values) -> int:
    return q.dim - _rank_of_contraction(q, values)


def index_numeric(q: MatrixLieAlgebra, s: Sampler | None = None) -> int:
    """Minimum of dim q_xi over s.k random integer forms."""
    s = s or Sampler()
    if q.dim == 0:
        return 0
    return min(stabiliser_dim(q, s.vector(q.dim)) for _ in range(s.k))


# --------------------------------------------------------------------------
# generic stabilisers


def sparse_to_dense(x: Sparse, n: int) -> list[list[Fraction]]:
    out = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in x.items():
        out[i][j] = v
    return out


def is_semisimple(x: Sparse, n: int) -> bool:
    return polys.is_semisimple_matrix(sparse_to_dense(x, n))


@dataclass
class TorusVerdict:
    ok: bool
    torus: MatrixLieAlgebra | None
    form: tuple | None
    index: int
    attempts: int
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "TORUS" if self.ok else "NonSemisimpleStabiliser"


def generic_torus(q: MatrixLieAlgebra, s: Sampler | None = None, index: int | None = None) -> TorusVerdict:
    """Stabiliser of a random regular form, checked abelian and semisimple.

    Repeats up to ``s.max_resamples`` times; if every regular stabiliser seen
    contains a non-semisimple element the verdict is NonSemisimpleStabiliser.
    """
    s = s or Sampler()
    if index is None:
        index = index_numeric(q, s)
    reason = ""
    for attempt in range(1, s.max_resamples + 1):
        values = s.vector(q.dim)
        if stabiliser_dim(q, values) != index:
            reason = "form not regular"
            continue
        stab = stabiliser_of(q, values)
        if not stab.is_abelian():
            reason = "stabiliser is not abelian"
            continue
        bad = [k for k, b in enumerate(stab.basis) if not is_semisimple(b, q.n)]
        if bad:
            reason = f"stabiliser basis element {bad[0]} is not semisimple"
            continue
        # commuting semisimple elements: the whole stabiliser is a torus
        return TorusVerdict(True, stab, tuple(values), index, attempt)
    return TorusVerdict(False, None, None, index, s.max_resamples, reason)


@dataclass
class MrsNumeric:
    m: MatrixLieAlgebra
    gamma: tuple  # values of the nilpotent-and-reductive-type form on q
    torus: MatrixLieAlgebra
    form: tuple
    index: int


def _solve_t_component(torus: MatrixLieAlgebra, q: MatrixLieAlgebra, values: Sequence) -> Sparse:
    """x_t in t with tr(x_t t_j) = xi(t_j) for all basis elements t_j of t."""
    xi = LinearForm(q, tuple(Fraction(v) for v in values))
    tb = torus.basis
    if not tb:
        return {}
    rhs = [xi(t) for t in tb]
    g = torus.gram()
    if linalg.rank_of(g) < len(tb):
        raise linalg.DegenerateGram("trace form is degenerate on the generic torus")
    a = linalg.solve(g, rhs)
    return torus.element(a)


def mrs_numeric(q: MatrixLieAlgebra, s: Sampler | None = None) -> MrsNumeric:
    """Stabiliser of xi minus its torus component, with its certificates checked."""
    s = s or Sampler()
    index = index_numeric(q, s)
    last: Exception | None = None
    for _ in range(s.max_resamples):
        tv = generic_torus(q, s, index)
        if not tv.ok:
            raise ReductivityCheckFailed(f"no generic torus: {tv.reason}")
        try:
            xt = _solve_t_component(tv.torus, q, tv.form)
        except linalg.DegenerateGram as e:
            last = e
            continue
        gamma = tuple(Fraction(c) - trace_product(b, xt) for c, b in zip(tv.form, q.basis))
        m = stabiliser_of(q, gamma)
        g = LinearForm(q, gamma)
        if any(g(b) for b in m.basis):
            raise ReductivityCheckFailed("the projected form does not vanish on its stabiliser")
        if not m.trace_form_nondegenerate():
            raise ReductivityCheckFailed("trace form is degenerate on the stabiliser")
        if index_numeric(m, s) != index:
            raise ReductivityCheckFailed("rank of the stabiliser differs from the index")
        return MrsNumeric(m, gamma, tv.torus, tv.form, index)
    raise linalg.DegenerateGram(f"degenerate torus Gram matrix after {s.max_resamples} samples") from last


# --------------------------------------------------------------------------
# certification of a candidate


def upsilon_space(q: MatrixLieAlgebra, m: MatrixLieAlgebra) -> linalg.Subspace:
    """Forms (as value vectors on q) vanishing on m and on [q, m]."""
    vecs = []
    for b in m.basis:
        c = q.coords(b)
        if c is None:
            raise NotContained(f"{m.name} is not contained in {q.name}")
        vecs.append(c)
    for x in q.basis:
        for b in m.basis:
            br = bracket(x, b)
            if br:
                vecs.append(q.fast_coords(br))
    w = linalg.Subspace.span(vecs, q.dim)
    return linalg.annihilator(w)


@dataclass
class Verdict:
    passed: bool
    target_dim: int
    best_dim: int
    samples: int
    seed: int
    upsilon_dim: int
    stabiliser: MatrixLieAlgebra | None = None

    def as_dict(self) -> dict:
        return {
            "upsilon_pass": self.passed,
            "target_dim": self.target_dim,
            "best_stabiliser_dim": self.best_dim,
            "samples": self.samples,
            "upsilon_dim": self.upsilon_dim,
        }


def verify_mrs(q: MatrixLieAlgebra, m: MatrixLieAlgebra, s: Sampler | None = None) -> Verdict:
    """PASS iff a random form in the upsilon space of m has stabiliser exactly m."""
    s = s or Sampler()
    ups = upsilon_space(q, m)
    best = q.dim + 1
    best_stab = None
    for attempt in range(1, s.max_resamples + 1):
        coeffs = s.vector(ups.dim)
        values = [sum((c * v[k] for c, v in zip(coeffs, ups.basis) if c), Fraction(0)) for k in range(q.dim)]
        d = stabiliser_dim(q, values)
        if d < best:
            best = d
        if d == m.dim:
            stab = stabiliser_of(q, values)
            if stab == m:
                return Verdict(True, m.dim, d, attempt, s.seed, ups.dim, stab)
            best_stab = stab
    return Verdict(False, m.dim, best, s.max_resamples, s.seed, ups.dim, best_stab)


# --------------------------------------------------------------------------
# type identification


@dataclass
class IdentifiedType:
    type: ReductiveType | None
    invariants: tuple  # (dim, rank, dim derived, dim centre)
    status: str  # "OK" or "UNRESOLVED"
    primes: tuple = ()

    def __str__(self):
        return str(self.type) if self.type is not None else f"UNRESOLVED {self.invariants}"


def invariant_tuple(m: MatrixLieAlgebra, s: Sampler | None = None) -> tuple:
    s = s or Sampler()
    return (m.dim, index_numeric(m, s), m.derived().dim, m.center().dim)


def _tensor_mod(m: MatrixLieAlgebra, p: int) -> np.ndarray:
    t, den = _structure_tensor(m)
    inv = pow(den, -1, p)
    return (np.vectorize(lambda x: int(x) % p, otypes=[object])(t) * inv % p).astype(np.int64) if t.dtype == object \
        else (t % p) * inv % p


def _basis_mod(m: MatrixLieAlgebra, p: int) -> list[dict]:
    out = []
    for b in m.basis:
        out.append({k: v.numerator % p * pow(v.denominator, -1, p) % p for k, v in b.items()})
    return out


def _classify(nroots: int, rank: int, nshort: int) -> tuple[str, int] | None:
    if nshort == 0 or nshort == nroots:
        if nroots == rank * (rank + 1):
            return ("A", rank)
        if rank >= 4 and nroots == 2 * rank * (rank - 1):
            return ("D", rank)
        return {(72, 6): ("E", 6), (126, 7): ("E", 7), (240, 8): ("E", 8)}.get((nroots, rank))
    if (nroots, rank) == (12, 2):
        return ("G", 2)
    if (nroots, rank) == (48, 4):
        return ("F", 4)
    if nroots == 2 * rank * rank:
        if rank == 2:
            return ("C", 2)
        if nshort == 2 * rank:
            return ("B", rank)
        if nshort == 2 * rank * (rank - 1):
            return ("C", rank)
    return None


def _root_system_mod_p(m: MatrixLieAlgebra, p: int, rank: int, rng: random.Random, trials: int):
    """Semisimple factors read off from a split regular element mod p, or None."""
    d, n = m.dim, m.n
    tmod = _tensor_mod(m, p)
    bmod = _basis_mod(m, p)
    for _ in range(trials):
        x = [rng.randrange(p) for _ in range(d)]
        xm = [[0] * n for _ in range(n)]
        for c, b in zip(x, bmod):
            if c:
                for (i, j), v in b.items():
                    xm[i][j] = (xm[i][j] + c * v) % p
        roots = polys.split_roots_mod(polys.charpoly_mod(xm, p), p, rng)
        if roots is None:
            continue
        lam = list(roots)
        cands = sorted({(a - b) % p for a in lam for b in lam})
        # ad x on m: column j = coordinates of [x, b_j]
        ad = np.zeros((d, d), dtype=np.int64)
        for i, c in enumerate(x):
            if c:
                ad = (ad + c * tmod[i].T) % p
        spaces = {}
        total = 0
        ok = True
        for mu in cands:
            a = (ad - mu * np.eye(d, dtype=np.int64)) % p
            ns = kernels.nullspace_mod_p(a, p)
            if len(ns):
                if mu and len(ns) != 1:
                    ok = False
                    break
                spaces[mu] = ns
                total += len(ns)
        if not ok or total != d or len(spaces.get(0, ())) != rank:
            continue
        cartan = spaces[0]
        # alpha(h_l) for each root vector e: [h_l, e] = alpha(h_l) e
        hads = []
        for h in cartan:
            ah = np.zeros((d, d), dtype=np.int64)
            for i, c in enumerate(h):
                if c:
                    ah = (ah + int(c) * tmod[i].T) % p
            hads.append(ah)
        rootvecs = []
        for mu, ns in spaces.items():
            if not mu:
                continue
            e = ns[0]
            piv = int(np.flatnonzero(e)[0])
            inv = pow(int(e[piv]), -1, p)
            ev = [int(v) for v in e]
            # exact dot products: int64 products of residues would overflow
            rootvecs.append(tuple(sum(int(a) * v for a, v in zip(ah[piv], ev)) % p * inv % p for ah in hads))
        return rootvecs
    return None


def _components_from_roots(rootvecs: list[tuple], p: int) -> list[tuple[str, int]] | None:
    rset = set(rootvecs)
    if len(rset) != len(rootvecs):
        return None

    def add(a, b, k=1):
        return tuple((x + k * y) % p for x, y in zip(a, b))

    def neg(a):
        return tuple((-x) % p for x in a)

    parent = {r: r for r in rootvecs}

    def find(r):
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    for a in rootvecs:
        if neg(a) not in rset:
            return None
        parent[find(a)] = find(neg(a))
        for b in rootvecs:
            if add(a, b) in rset or add(a, b, -1) in rset:
                parent[find(a)] = find(b)
    groups: dict = {}
    for r in rootvecs:
        groups.setdefault(find(r), []).append(r)
    out = []
    for roots in groups.values():
        rk = kernels.rank_mod_p(np.array(roots, dtype=np.int64), p)
        rs = set(roots)
        nshort = sum(1 for a in roots if any(b != neg(a) and add(b, a, 2) in rs for b in roots))
        typ = _classify(len(roots), rk, nshort)
        if typ is None:
            return None
        out.append(typ)
    return sorted(out)


def identify_type(m: MatrixLieAlgebra, s: Sampler | None = None, trials: int = 4000) -> IdentifiedType:
    """Reductive type of m, from a split regular element modulo two primes.

    Falls back to UNRESOLVED with the invariant tuple if no split element is
    found or the two primes disagree.
    """
    s = s or Sampler()
    inv = invariant_tuple(m, s)
    dim, rank, dder, dcen = inv
    if dder == 0:
        t = ReductiveType.torus(dim)
        return IdentifiedType(t, inv, "OK" if t.invariants() == inv else "UNRESOLVED", ())
    found = []
    used = []
    for p in kernels.PRIMES[:6]:
        rv = _root_system_mod_p(m, p, rank, s.rng, trials)
        if rv is None:
            continue
        comps = _components_from_roots(rv, p)
        if comps is None:
            continue
        found.append(tuple(comps))
        used.append(p)
        if len(found) == 2:
            break
    if len(found) == 2 and found[0] == found[1]:
        t = ReductiveType.make(found[0], dcen)
        if t.invariants() == inv:
            return IdentifiedType(t, inv, "OK", tuple(used))
    return IdentifiedType(None, inv, "UNRESOLVED", tuple(used))
