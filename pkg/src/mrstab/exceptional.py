"""Parabolic subalgebras p(pi) of the simple Lie algebras, by root data.

p(pi) is the standard parabolic whose Levi factor has simple roots pi.  The
answer (quasi-reductivity and the type of the maximal reductive stabiliser)
is obtained by

* the highest-root reduction when the root attached to the highest root is
  not in pi: p(pi) is replaced by its intersection with the semisimple part
  of the centraliser of the highest root vector (E8 -> E7 -> D6, E6 -> A5,
  F4 -> C3, G2 -> A1, and likewise for B, C, D);
* additivity over connected components of pi (not in E6);
* the stored tables for connected pi containing that root.

Types A, B, C, D are answered directly by the meander and the flag formulas,
so the same machinery also cross-checks the reduction on classical types.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable

from . import rootsys
from .classical import IsoParabolic, NotQuasiReductive, is_qr, mrs_classical
from .meander import mrs_gl
from .reductive import ReductiveType
from .rootsys import SimpleType


class NotInTable(KeyError):
    pass


class NotCovered(ValueError):
    pass


class TableError(ValueError):
    pass


@dataclass(frozen=True)
class TableRow:
    type: SimpleType
    pi: frozenset
    index: int
    mrs: ReductiveType
    embedding_note: str
    row: int  # 1-based position within its table

    def describe(self) -> str:
        return f"{self.type} row ({self.row}): index {self.index}, {self.mrs}; {self.embedding_note}"


@dataclass(frozen=True)
class ExclusionRule:
    type: SimpleType
    forbidden_components: tuple = ()
    forbidden_pi_up_to_automorphism: tuple = ()


# the simple root attached to the highest root, re-derived at load
ALPHA_TILDE = {"E6": 6, "E7": 6, "E8": 1, "F4": 4, "G2": 2}

_EXCLUSIONS = {
    "E6": ((frozenset({6}),), (frozenset({1, 2, 3, 5, 6}),)),
    "E7": ((frozenset({6}), frozenset({4, 5, 6}), frozenset({2, 3, 4, 5, 6})), ()),
    "E8": ((frozenset({1}), frozenset({1, 2, 3}), frozenset(range(1, 6)), frozenset(range(1, 8))), ()),
    "F4": ((frozenset({4}),), ()),
    "G2": ((frozenset({2}),), ()),
}


def _type(t) -> SimpleType:
    return SimpleType.parse(t) if isinstance(t, str) else t


def _pi(pi: Iterable[int]) -> frozenset:
    return frozenset(int(i) for i in pi)


def exclusion_rule(t) -> ExclusionRule:
    t = _type(t)
    comps, full = _EXCLUSIONS[str(t)]
    return ExclusionRule(t, comps, full)


def parse_tables(text: str) -> tuple:
    """Rows of the table file, checked for index = rank and valid root sets."""
    rows: list[TableRow] = []
    counts: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(";", 4)]
        if len(fields) != 5:
            raise TableError(f"line {lineno}: expected 5 fields")
        t = SimpleType.parse(fields[0])
        pi = _pi(fields[1].split(","))
        index = int(fields[2])
        mrs = ReductiveType.parse(fields[3])
        counts[str(t)] = counts.get(str(t), 0) + 1
        if mrs.rank != index:
            raise TableError(f"line {lineno}: index {index} but rank({mrs}) = {mrs.rank}")
        rs = rootsys.build(t)
        if not pi <= frozenset(rs.simple):
            raise TableError(f"line {lineno}: {sorted(pi)} is not a set of simple roots of {t}")
        rows.append(TableRow(t, pi, index, mrs, fields[4], counts[str(t)]))
    return tuple(rows)


@lru_cache(maxsize=None)
def load_tables() -> tuple:
    text = resources.files("mrstab").joinpath("data/exceptional_tables.txt").read_text(encoding="utf-8")
    rows = parse_tables(text)
    for name, a in ALPHA_TILDE.items():
        found = rootsys.theta_tilde(rootsys.build(name)).alpha
        if found != a:
            raise TableError(f"{name}: stored highest-root neighbour {a}, root data give {found}")
    return tuple(rows)


def table_rows(t=None) -> list[TableRow]:
    rows = load_tables()
    if t is None:
        return list(rows)
    t = _type(t)
    return [r for r in rows if r.type == t]


def table_lookup(t, pi) -> TableRow:
    t, pi = _type(t), _pi(pi)
    rs = rootsys.build(t)
    key = rootsys.normalize_by_diagram_automorphism(rs, pi)
    for row in table_rows(t):
        if rootsys.normalize_by_diagram_automorphism(rs, row.pi) == key:
            return row
    raise NotInTable(f"{t} pi={sorted(pi)} matches no table row")


# --------------------------------------------------------------------------
# classical types


def composition_from_pi(rank: int, pi) -> tuple:
    """Block sizes of the Levi of p(pi) in sl_{rank+1}."""
    pi = _pi(pi)
    parts, size = [], 1
    for i in range(1, rank + 1):
        if i in pi:
            size += 1
        else:
            parts.append(size)
            size = 1
    parts.append(size)
    return tuple(parts)


def flag_from_pi(t, pi) -> IsoParabolic | None:
    """The isotropic flag type of p(pi) in so_n / sp_n (None when pi is everything)."""
    t, pi = _type(t), _pi(pi)
    ell = t.rank
    omitted = sorted(set(range(1, ell + 1)) - pi)
    if not omitted:
        return None
    if t.family == "D":
        dims = [i for i in omitted if i <= ell - 2]
        spin = [i for i in omitted if i > ell - 2]
        if len(spin) == 2:
            dims.append(ell - 1)
        elif spin:
            dims.append(ell)
    elif t.family in "BC":
        dims = omitted
    else:
        raise ValueError(f"{t} is not of type B, C or D")
    parts = [d - e for d, e in zip(dims, [0] + dims[:-1])]
    eps = -1 if t.family == "C" else 1
    n = 2 * ell + 1 if t.family == "B" else 2 * ell
    return IsoParabolic(eps, n, tuple(parts))


def _whole(t: SimpleType) -> ReductiveType:
    return ReductiveType.make([(t.family, t.rank)])


def _classical_is_qr(t: SimpleType, pi: frozenset) -> bool:
    if t.family == "A":
        return True
    p = flag_from_pi(t, pi)
    return True if p is None else is_qr(p)


def _classical_mrs(t: SimpleType, pi: frozenset) -> ReductiveType:
    if t.family == "A":
        n = t.rank + 1
        out = ReductiveType.zero()
        for r in mrs_gl(composition_from_pi(t.rank, pi), (n,)).ranks():
            out = out + ReductiveType.gl(r)
        return out.drop_center(1)
    p = flag_from_pi(t, pi)
    return _whole(t) if p is None else mrs_classical(p).type


# --------------------------------------------------------------------------
# reductions


def reduce_highest_root(t, pi) -> list[tuple[SimpleType, frozenset]]:
    """Components of the reduced system with pi relabelled in their standard order.

    Needs pi to avoid the root attached to the highest root.
    """
    t, pi = _type(t), _pi(pi)
    rs = rootsys.build(t)
    tt = rootsys.theta_tilde(rs)
    if tt.alpha in pi:
        raise ValueError(f"alpha_{tt.alpha} is in pi; no highest-root reduction")
    out = []
    for comp in rootsys.connected_components(rs, tt.pi_tilde):
        sub, order = rootsys.standard_labelling(rs, comp)
        out.append((sub, frozenset(k + 1 for k, i in enumerate(order) if i in pi)))
    return out


def _split(rs, pi: frozenset) -> list[frozenset]:
    return rootsys.connected_components(rs, pi)


def _excluded(t: SimpleType, rs, pi: frozenset) -> str | None:
    comps, full = _EXCLUSIONS[str(t)]
    for c in _split(rs, pi):
        if c in comps:
            return f"{{{', '.join(f'α{i}' for i in sorted(c))}}} is a connected component of pi"
    key = rootsys.normalize_by_diagram_automorphism(rs, pi)
    for f in full:
        if rootsys.normalize_by_diagram_automorphism(rs, f) == key:
            return f"pi = {sorted(f)} up to the diagram automorphism"
    return None


def _solve(t: SimpleType, pi: frozenset, trace: list, leaves: list) -> ReductiveType:
    """Type of the maximal reductive stabiliser; raises NotQuasiReductive.

    Classical sub-answers are appended to ``leaves`` as (type, pi, answer).
    """
    if t.family in "ABCD":
        if not _classical_is_qr(t, pi):
            raise NotQuasiReductive(f"{t} pi={sorted(pi)}: flag type fails the orthogonal criterion")
        out = _classical_mrs(t, pi)
        trace.append(f"{t} pi={sorted(pi)}: {'meander' if t.family == 'A' else 'flag formula'} -> {out}")
        leaves.append((t, pi, out))
        return out
    rs = rootsys.build(t)
    if pi == frozenset(rs.simple):
        trace.append(f"{t}: pi is everything, p = g")
        return _whole(t)
    why = _excluded(t, rs, pi)
    if why:
        raise NotQuasiReductive(f"{t} pi={sorted(pi)}: {why}")
    a = ALPHA_TILDE[str(t)]
    if a not in pi:
        out = ReductiveType.zero()
        for sub, spi in reduce_highest_root(t, pi):
            trace.append(f"{t} pi={sorted(pi)}: highest-root reduction to {sub} pi={sorted(spi)}")
            out = out + _solve(sub, spi, trace, leaves)
        return out
    comps = _split(rs, pi)
    if len(comps) == 1 or str(t) == "E6":
        try:
            row = table_lookup(t, pi)
        except NotInTable:
            raise NotCovered(f"{t} pi={sorted(pi)}: no table row and no reduction applies") from None
        trace.append(f"{t} pi={sorted(pi)}: table {row.describe()}")
        return row.mrs
    out = ReductiveType.zero()
    trace.append(f"{t} pi={sorted(pi)}: additivity over {[sorted(c) for c in comps]}")
    for c in comps:
        out = out + _solve(t, c, trace, leaves)
    return out


def mrs_parabolic(t, pi, trace: list | None = None, leaves: list | None = None) -> ReductiveType:
    """Maximal reductive stabiliser type of p(pi) in any simple type."""
    return _solve(_type(t), _pi(pi), [] if trace is None else trace, [] if leaves is None else leaves)


def is_qr_parabolic(t, pi) -> bool:
    try:
        mrs_parabolic(t, pi)
    except NotQuasiReductive:
        return False
    return True


def _need_exceptional(t) -> SimpleType:
    t = _type(t)
    if not t.is_exceptional:
        raise ValueError(f"{t} is not exceptional")
    return t


def is_qr_exceptional(t, pi) -> bool:
    return is_qr_parabolic(_need_exceptional(t), pi)


def mrs_exceptional(t, pi, trace: list | None = None, leaves: list | None = None) -> ReductiveType:
    return mrs_parabolic(_need_exceptional(t), pi, trace, leaves)


def index_parabolic(t, pi) -> int:
    """Index of a quasi-reductive p(pi), as the rank of its stabiliser type."""
    return mrs_parabolic(t, pi).rank


def mrs_via_reduction(t, pi) -> ReductiveType:
    """For B, C, D with pi avoiding the highest-root neighbour: the answer
    assembled from the reduced components instead of the flag formula."""
    t = _type(t)
    if t.family not in "BCD":
        raise ValueError("mrs_via_reduction is for types B, C, D")
    out = ReductiveType.zero()
    for sub, spi in reduce_highest_root(t, pi):
        out = out + mrs_parabolic(sub, spi)
    return out
