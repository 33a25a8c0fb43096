"""Root systems of the simple Lie algebras.

Simple roots are labelled 1..rank.  Classical types use the usual Bourbaki
labelling; the exceptional ones use the Vinberg-Onishchik labelling:

* E6: chain 1-2-3-4-5, node 6 attached to 3
* E7: chain 1-2-3-4-5-6, node 7 attached to 4
* E8: chain 1-2-3-4-5-6-7, node 8 attached to 5
* F4: chain 1-2=>3-4 with 1, 2 short and 3, 4 long
* G2: 1 short, 2 long

A root is a tuple of integer coefficients over the simple roots, and the
pairing is the symmetrised Cartan form with short roots of squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, NamedTuple

Root = tuple  # tuple[int, ...]


class InvalidType(ValueError):
    pass


_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        f, r = self.family, self.rank
        ok = (
            (f in _MIN_RANK and r >= _MIN_RANK[f])
            or (f == "E" and r in (6, 7, 8))
            or (f == "F" and r == 4)
            or (f == "G" and r == 2)
        )
        if not ok:
            raise InvalidType(f"no simple type {f}{r}")

    @classmethod
    def parse(cls, text: str) -> "SimpleType":
        text = text.strip().upper()
        try:
            return cls(text[0], int(text[1:]))
        except (IndexError, ValueError):
            raise InvalidType(f"cannot parse simple type {text!r}") from None

    def __str__(self):
        return f"{self.family}{self.rank}"

    @property
    def is_exceptional(self) -> bool:
        return self.family in "EFG"


def _diagram(t: SimpleType) -> tuple[list[int], list[tuple[int, int]]]:
    """Squared lengths of simple roots and the edges (1-based) of the diagram."""
    f, r = t.family, t.rank
    chain = [(i, i + 1) for i in range(1, r)]
    if f == "A":
        return [2] * r, chain
    if f == "B":
        return [4] * (r - 1) + [2], chain
    if f == "C":
        return [2] * (r - 1) + [4], chain
    if f == "D":
        return [2] * r, [(i, i + 1) for i in range(1, r - 1)] + [(r - 2, r)]
    if f == "E":
        branch = {6: 3, 7: 4, 8: 5}[r]
        return [2] * r, [(i, i + 1) for i in range(1, r - 1)] + [(branch, r)]
    if f == "F":
        return [2, 2, 4, 4], chain
    if f == "G":
        return [2, 6], chain
    raise InvalidType(str(t))


@dataclass(frozen=True)
class RootSystem:
    type: SimpleType
    lengths: tuple  # squared length of each simple root
    form: tuple  # symmetrised Cartan matrix, rows indexed by simple roots
    positive_roots: tuple  # sorted by height, then lexicographically
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def simple(self) -> tuple:
        return tuple(range(1, self.rank + 1))

    def simple_root(self, i: int) -> Root:
        return tuple(int(j == i - 1) for j in range(self.rank))

    def pairing(self, a: Root, b: Root) -> int:
        f = self.form
        return sum(a[i] * f[i][j] * b[j] for i in range(self.rank) if a[i] for j in range(self.rank) if b[j])

    def is_root(self, a: Root) -> bool:
        a = tuple(a)
        if a in self._index:
            return True
        return tuple(-x for x in a) in self._index

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.form[i - 1][j - 1] != 0

    def highest(self) -> Root:
        return self.positive_roots[-1]


def build(t: SimpleType | str) -> RootSystem:
    if isinstance(t, str):
        t = SimpleType.parse(t)
    return _build(t)


@lru_cache(maxsize=None)
def _build(t: SimpleType) -> RootSystem:
    lengths, edges = _diagram(t)
    r = t.rank
    form = [[0] * r for _ in range(r)]
    for i in range(r):
        form[i][i] = lengths[i]
    for i, j in edges:
        v = -max(lengths[i - 1], lengths[j - 1]) // 2
        form[i - 1][j - 1] = form[j - 1][i - 1] = v

    def pair(a, b):
        return sum(a[i] * form[i][j] * b[j] for i in range(r) for j in range(r))

    simple = [tuple(int(j == i) for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i, a in enumerate(simple):
                # root string through b in direction a: b - q a, ..., b + p a
                q = 0
                while tuple(x - (q + 1) * y for x, y in zip(b, a)) in roots:
                    q += 1
                p = q - 2 * pair(b, a) // lengths[i]
                if p > 0:
                    c = tuple(x + y for x, y in zip(b, a))
                    if c not in roots:
                        roots.add(c)
                        nxt.append(c)
        layer = nxt
    pos = tuple(sorted(roots, key=lambda v: (sum(v), v)))
    rs = RootSystem(t, tuple(lengths), tuple(tuple(row) for row in form), pos)
    rs._index.update({v: k for k, v in enumerate(pos)})
    return rs


def positive_root_count(t: SimpleType) -> int:
    f, r = t.family, t.rank
    if f == "A":
        return r * (r + 1) // 2
    if f in "BC":
        return r * r
    if f == "D":
        return r * (r - 1)
    return {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}[str(t)]


# --------------------------------------------------------------------------
# subsets of simple roots


def _norm(pi: Iterable[int]) -> frozenset:
    return frozenset(pi)


def connected_components(rs: RootSystem, pi: Iterable[int]) -> list[frozenset]:
    """Components of pi in the Dynkin diagram, ordered by smallest label."""
    left = set(pi)
    out = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        left.discard(start)
        while stack:
            i = stack.pop()
            for j in list(left):
                if rs.adjacent(i, j):
                    left.discard(j)
                    comp.add(j)
                    stack.append(j)
        out.append(frozenset(comp))
    return sorted(out, key=min)


def is_connected(rs: RootSystem, pi: Iterable[int]) -> bool:
    return len(connected_components(rs, pi)) == 1


def support(root: Root) -> frozenset:
    return frozenset(i + 1 for i, x in enumerate(root) if x)


def positive_roots_of(rs: RootSystem, pi: Iterable[int]) -> list[Root]:
    """Delta_pi^+: positive roots supported in pi."""
    pi = _norm(pi)
    return [a for a in rs.positive_roots if support(a) <= pi]


def highest_root(rs: RootSystem, pi: Iterable[int] | None = None) -> Root:
    pi = _norm(rs.simple if pi is None else pi)
    if not pi:
        raise ValueError("highest root of an empty set of simple roots")
    if not is_connected(rs, pi):
        raise ValueError(f"{sorted(pi)} is not connected")
    return positive_roots_of(rs, pi)[-1]


def is_orthogonal(rs: RootSystem, a: Root, b: Root) -> bool:
    return rs.pairing(a, b) == 0


def is_strongly_orthogonal(rs: RootSystem, a: Root, b: Root) -> bool:
    s = tuple(x + y for x, y in zip(a, b))
    d = tuple(x - y for x, y in zip(a, b))
    return not rs.is_root(s) and not (any(d) and rs.is_root(d))


# --------------------------------------------------------------------------
# identifying subsystems


def _arms(rs: RootSystem, comp: frozenset, centre: int) -> list[list[int]]:
    arms = []
    for start in sorted(j for j in comp if rs.adjacent(centre, j)):
        arm = [start]
        prev, cur = centre, start
        while True:
            nxt = [j for j in comp if rs.adjacent(cur, j) and j != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            arm.append(cur)
        arms.append(arm)
    return arms


def _chain_from(rs: RootSystem, comp: frozenset, end: int) -> list[int]:
    order = [end]
    prev = None
    cur = end
    while True:
        nxt = [j for j in comp if rs.adjacent(cur, j) and j != prev]
        if not nxt:
            return order
        prev, cur = cur, nxt[0]
        order.append(cur)


def standard_labelling(rs: RootSystem, comp: Iterable[int]) -> tuple[SimpleType, list[int]]:
    """Dynkin type of a connected subset and its nodes listed in standard order.

    ``order[k]`` is the label in ``rs`` of simple root k+1 of the identified
    type (Bourbaki for A-D, Vinberg-Onishchik for E, F, G).
    """
    comp = _norm(comp)
    if not comp or not is_connected(rs, comp):
        raise ValueError("standard labelling needs a nonempty connected subset")
    n = len(comp)
    if n == 1:
        return SimpleType("A", 1), [next(iter(comp))]
    deg = {i: sum(rs.adjacent(i, j) for j in comp) for i in comp}
    length = {i: rs.lengths[i - 1] for i in comp}
    branch = [i for i in comp if deg[i] == 3]
    if branch:
        arms = sorted(_arms(rs, comp, branch[0]), key=lambda a: (len(a), a[0]))
        lens = tuple(len(a) for a in arms)
        if lens[0] == lens[1] == 1:
            if lens[2] == 1:  # D4: any arm may serve as the "long" one
                arms = sorted(arms, key=lambda a: a[0])
                return SimpleType("D", 4), [arms[0][0], branch[0], arms[1][0], arms[2][0]]
            long_arm = arms[2]
            return SimpleType("D", n), list(reversed(long_arm)) + [branch[0], arms[0][0], arms[1][0]]
        fam = {(1, 2, 2): 6, (1, 2, 3): 7, (1, 2, 4): 8}.get(lens)
        if fam is None:
            raise ValueError(f"unrecognised branched diagram with arms {lens}")
        leaf = arms[0]
        cands = [list(reversed(big)) + [branch[0]] + a2 + leaf for a2, big in ((arms[1], arms[2]), (arms[2], arms[1]))
                 if len(big) >= len(a2)]
        return SimpleType("E", fam), min(cands)
    ends = sorted(i for i in comp if deg[i] == 1)
    if len(set(length.values())) == 1:
        return SimpleType("A", n), _chain_from(rs, comp, ends[0])
    ratio = max(length.values()) // min(length.values())
    if ratio == 3:
        short = min(comp, key=lambda i: length[i])
        return SimpleType("G", 2), _chain_from(rs, comp, short)
    if n == 2:
        long_end = max(comp, key=lambda i: length[i])
        return SimpleType("B", 2), _chain_from(rs, comp, long_end)
    chain = _chain_from(rs, comp, ends[0])
    ls = [length[i] for i in chain]
    k = next(i for i in range(n - 1) if ls[i] != ls[i + 1])  # the double bond is chain[k]-chain[k+1]
    if 0 < k < n - 2:
        # double bond in the middle: F4, listed from the short end
        return SimpleType("F", 4), chain if ls[0] < ls[-1] else chain[::-1]
    if k == 0:
        chain = chain[::-1]
        ls = ls[::-1]
    # double bond at the end; the odd node out carries the last label
    fam = "B" if ls[-1] < ls[0] else "C"
    return SimpleType(fam, n), chain


def subsystem_types(rs: RootSystem, pi: Iterable[int]) -> list[SimpleType]:
    return [standard_labelling(rs, c)[0] for c in connected_components(rs, pi)]


class ThetaTilde(NamedTuple):
    alpha: int
    pi_tilde: frozenset
    reduced_type: object  # SimpleType when pi_tilde is connected, else tuple of SimpleType


class NoUniqueTheta(ValueError):
    pass


def theta_tilde(rs: RootSystem) -> ThetaTilde:
    """The unique simple root not orthogonal to the highest root, and the rest.

    For A_l with l >= 2 there are two such roots and :class:`NoUniqueTheta`
    is raised.
    """
    theta = rs.highest()
    bad = [i for i in rs.simple if rs.pairing(theta, rs.simple_root(i)) != 0]
    if len(bad) != 1:
        raise NoUniqueTheta(f"{rs.type}: simple roots {bad} are not orthogonal to the highest root")
    a = bad[0]
    rest = frozenset(rs.simple) - {a}
    types = tuple(subsystem_types(rs, rest))
    reduced = types[0] if len(types) == 1 else types
    return ThetaTilde(a, rest, reduced)


# --------------------------------------------------------------------------
# diagram automorphisms


def diagram_automorphisms(t: SimpleType) -> list[dict]:
    """All automorphisms of the Dynkin diagram as label maps."""
    r = t.rank
    ident = {i: i for i in range(1, r + 1)}
    if t.family == "A" and r > 1:
        return [ident, {i: r + 1 - i for i in ident}]
    if t.family == "D":
        if r == 4:
            out = []
            for perm in permutations((1, 3, 4)):
                m = dict(ident)
                m.update(zip((1, 3, 4), perm))
                out.append(m)
            return out
        m = dict(ident)
        m[r - 1], m[r] = r, r - 1
        return [ident, m]
    if str(t) == "E6":
        return [ident, {1: 5, 2: 4, 3: 3, 4: 2, 5: 1, 6: 6}]
    return [ident]


def normalize_by_diagram_automorphism(rs: RootSystem, pi: Iterable[int]) -> frozenset:
    pi = _norm(pi)
    images = [frozenset(m[i] for i in pi) for m in diagram_automorphisms(rs.type)]
    return min(images, key=lambda s: sorted(s))


def all_subsets(rs: RootSystem) -> list[frozenset]:
    labels = rs.simple
    return [frozenset(c) for k in range(len(labels) + 1) for c in combinations(labels, k)]
