"""Meander graphs of seaweed subalgebras q(a|b) of gl_n.

The seaweed q(a|b) consists of the matrices E_ij with
blk_a(i) <= blk_a(j) and blk_b(i) >= blk_b(j), where blk_c(i) is the block of
the composition c that contains i.  Its meander graph has vertices 1..n; each
block [s+1, s+k] of a contributes the edges (s+1, s+k), (s+2, s+k-1), ...
above the vertex rail, and likewise b below it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


class TotalMismatch(ValueError):
    pass


class InvariantBreach(AssertionError):
    """Two formulas that must agree did not."""


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"a composition needs positive parts, got {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, c) -> "Composition":
        if isinstance(c, Composition):
            return c
        if isinstance(c, str):
            return cls(tuple(int(x) for x in c.replace(" ", "").split(",") if x))
        return cls(tuple(c))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def blocks(self) -> list[tuple[int, int]]:
        """1-based inclusive vertex ranges of the blocks."""
        out, s = [], 0
        for p in self.parts:
            out.append((s + 1, s + p))
            s += p
        return out

    def block_of(self) -> list[int]:
        """blk[i-1] = index of the block containing vertex i."""
        out = []
        for k, p in enumerate(self.parts):
            out.extend([k] * p)
        return out

    def __str__(self):
        return ",".join(map(str, self.parts))


def compositions(n: int) -> list[tuple]:
    """All compositions of n, as tuples."""
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return out


def _pair(a, b) -> tuple[Composition, Composition]:
    a, b = Composition.of(a), Composition.of(b)
    if a.total != b.total:
        raise TotalMismatch(f"compositions of {a.total} and {b.total}")
    return a, b


@dataclass(frozen=True)
class Component:
    kind: str  # "cycle" or "segment"
    vertices: tuple  # sorted descending
    dimension: int = 0
    maximal: bool = False

    @property
    def is_cycle(self) -> bool:
        return self.kind == "cycle"


@dataclass(frozen=True)
class MeanderGraph:
    n: int
    a: Composition
    b: Composition
    a_edges: frozenset
    b_edges: frozenset
    components: tuple = field(default=())

    def cycles(self) -> list[Component]:
        return [c for c in self.components if c.is_cycle]

    def segments(self) -> list[Component]:
        return [c for c in self.components if not c.is_cycle]

    def component_of(self, v: int) -> Component:
        return next(c for c in self.components if v in c.vertices)


def _edges(c: Composition) -> frozenset:
    out = set()
    for lo, hi in c.blocks():
        i, j = lo, hi
        while i < j:
            out.add((i, j))
            i += 1
            j -= 1
    return frozenset(out)


def _raw_components(n: int, a_edges, b_edges) -> list[Component]:
    adj = {v: [] for v in range(1, n + 1)}
    for i, j in list(a_edges) + list(b_edges):
        adj[i].append(j)
        adj[j].append(i)
    seen = set()
    out = []
    for v in range(1, n + 1):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        kind = "cycle" if all(len(adj[u]) == 2 for u in comp) else "segment"
        out.append(Component(kind, tuple(sorted(comp, reverse=True))))
    return out


def is_inside(x: Component, y: Component) -> bool:
    """Whether x lies inside the cycle y: y_{2i} < x_1 < y_{2i-1} for some i."""
    if not y.is_cycle:
        raise ValueError("only cycles can contain other components")
    if x.vertices == y.vertices:
        return False
    x1 = x.vertices[0]
    ys = y.vertices
    return any(ys[2 * i + 1] < x1 < ys[2 * i] for i in range(len(ys) // 2))


def _nested_dimension(y: Component, comps: Sequence[Component]) -> int:
    inside = [x for x in comps if is_inside(x, y)]
    return 2 * sum(x.is_cycle for x in inside) + sum(not x.is_cycle for x in inside) + 2


def cycle_dimension(g: MeanderGraph, y: Component) -> int:
    """2 #(cycles inside) + #(segments inside) + 2, checked against y1 - y2 + 1."""
    if not y.is_cycle:
        return 1
    d = _nested_dimension(y, g.components)
    if d != y.vertices[0] - y.vertices[1] + 1:
        raise InvariantBreach(f"cycle {y.vertices}: nested count {d} vs gap formula")
    return d


def build_meander(a, b) -> MeanderGraph:
    a, b = _pair(a, b)
    ae, be = _edges(a), _edges(b)
    raw = _raw_components(a.total, ae, be)
    comps = []
    for c in raw:
        if c.is_cycle:
            dim = _nested_dimension(c, raw)
            if dim != c.vertices[0] - c.vertices[1] + 1:
                raise InvariantBreach(f"cycle {c.vertices}: nested count {dim} vs gap formula")
        else:
            dim = 1
        maximal = not any(y.is_cycle and is_inside(c, y) for y in raw)
        comps.append(Component(c.kind, c.vertices, dim, maximal))
    return MeanderGraph(a.total, a, b, ae, be, tuple(comps))


def maximal_components(g: MeanderGraph) -> list[Component]:
    return [c for c in g.components if c.maximal]


def seaweed_index(a, b) -> int:
    g = build_meander(a, b)
    by_max = sum(c.dimension for c in maximal_components(g))
    closed = 2 * len(g.cycles()) + len(g.segments())
    if by_max != closed:
        raise InvariantBreach(f"index of q({g.a}|{g.b}): {by_max} by maximal cycles, {closed} by counting")
    return by_max


def seaweed_dimension(a, b) -> int:
    a, b = _pair(a, b)
    ba, bb = a.block_of(), b.block_of()
    n = a.total
    return sum(1 for i in range(n) for j in range(n) if ba[i] <= ba[j] and bb[i] >= bb[j])


def seaweed_entries(a, b) -> list[tuple[int, int]]:
    """0-based positions (i, j) of the matrix units spanning q(a|b)."""
    a, b = _pair(a, b)
    ba, bb = a.block_of(), b.block_of()
    n = a.total
    return [(i, j) for i in range(n) for j in range(n) if ba[i] <= ba[j] and bb[i] >= bb[j]]


# --------------------------------------------------------------------------
# maximal reductive stabiliser


@dataclass(frozen=True)
class GlFactor:
    rank: int
    intervals: tuple = ()  # ((lo, hi), ...), each of length rank; used when rank > 1 or for cycles
    scalar_positions: tuple = ()  # vertices carrying the same scalar (segments)

    def describe(self) -> str:
        if self.scalar_positions:
            return f"GL1 scalar on {{{','.join(map(str, self.scalar_positions))}}}"
        spans = ", ".join(f"[{lo},{hi}]" for lo, hi in self.intervals)
        return f"GL{self.rank} diagonal on {spans}"


@dataclass(frozen=True)
class GlMrsDescriptor:
    factors: tuple
    drops_center: bool = False  # True for the sl_n convention

    def ranks(self) -> list[int]:
        return sorted((f.rank for f in self.factors), reverse=True)

    @property
    def index(self) -> int:
        return sum(f.rank for f in self.factors) - int(self.drops_center)

    def type_string(self) -> str:
        s = " × ".join(f"GL{r}" for r in self.ranks()) or "0"
        if self.drops_center:
            s += " / centre"
        return s


def mrs_gl(a, b) -> GlMrsDescriptor:
    """One GL_r per maximal component; a cycle x_1 > ... > x_t of dimension r
    gives the diagonal GL_r on the intervals [x_{2i}, x_{2i-1}]."""
    g = build_meander(a, b)
    factors = []
    for c in maximal_components(g):
        if c.is_cycle:
            xs = c.vertices
            iv = tuple((xs[2 * i + 1], xs[2 * i]) for i in range(len(xs) // 2))
            if any(hi - lo + 1 != c.dimension for lo, hi in iv):
                raise InvariantBreach(f"cycle {xs} has unequal gaps")
            factors.append(GlFactor(c.dimension, tuple(sorted(iv))))
        else:
            factors.append(GlFactor(1, (), tuple(sorted(c.vertices))))
    factors.sort(key=lambda f: (-f.rank, f.intervals, f.scalar_positions))
    return GlMrsDescriptor(tuple(factors))


# --------------------------------------------------------------------------
# reduction


class Move(NamedTuple):
    kind: str  # "split", "shrink" (2 a1 <= b1) or "fold" (2 a1 > b1)
    swapped: bool
    size: int  # a1 after the optional swap


def reduce_step(a: Sequence[int], b: Sequence[int]) -> tuple[tuple, tuple, Move]:
    """One reduction move on q(a|b); the split move strips gl_{a1}."""
    a, b = tuple(a), tuple(b)
    if sum(a) != sum(b):
        raise TotalMismatch(f"compositions of {sum(a)} and {sum(b)}")
    if not a:
        raise ValueError("nothing left to reduce")
    swapped = a[0] > b[0]
    if swapped:
        a, b = b, a
    a1, b1 = a[0], b[0]
    if a1 == b1:
        return a[1:], b[1:], Move("split", swapped, a1)
    if 2 * a1 <= b1:
        head = (b1 - 2 * a1,) if b1 > 2 * a1 else ()
        return a[1:], head + (a1,) + b[1:], Move("shrink", swapped, a1)
    return (2 * a1 - b1,) + a[1:], (a1,) + b[1:], Move("fold", swapped, a1)


def reduction_path(a, b) -> list[tuple[tuple, tuple, Move]]:
    a, b = _pair(a, b)
    cur = (a.parts, b.parts)
    out = []
    while cur[0]:
        na, nb, mv = reduce_step(*cur)
        out.append((cur[0], cur[1], mv))
        cur = (na, nb)
    return out


def mrs_gl_via_reduction(a, b) -> Counter:
    """Multiset of GL ranks obtained by reducing until every block splits off."""
    return Counter(mv.size for _, _, mv in reduction_path(a, b) if mv.kind == "split")


def component_signature(a, b) -> Counter:
    """Multiset of (kind, dimension) over all components."""
    g = build_meander(a, b)
    return Counter((c.kind, c.dimension) for c in g.components)


def nesting_signature(a, b) -> Counter:
    """Multiset of (kind, dimension, number of cycles containing it)."""
    g = build_meander(a, b)
    cycles = g.cycles()
    return Counter((c.kind, c.dimension, sum(is_inside(c, y) for y in cycles)) for c in g.components)


def step_preserves_components(a, b) -> bool:
    """One reduction move keeps components, dimensions and nesting; a split
    move removes exactly the components of q(a1|a1)."""
    na, nb, mv = reduce_step(a, b)
    after = nesting_signature(na, nb) if na else Counter()
    if mv.kind == "split":
        after = after + nesting_signature((mv.size,), (mv.size,))
    return nesting_signature(a, b) == after


# --------------------------------------------------------------------------
# output


def to_dot(g: MeanderGraph) -> str:
    lines = [
        f'graph "meander_{g.a}|{g.b}" {{',
        "  graph [splines=curved];",
        "  node [shape=circle, fixedsize=true, width=0.35];",
    ]
    for v in range(1, g.n + 1):
        lines.append(f'  {v} [pos="{v},0!"];')
    for i, j in sorted(g.a_edges):
        lines.append(f"  {i}:n -- {j}:n [color=black];")
    for i, j in sorted(g.b_edges):
        lines.append(f"  {i}:s -- {j}:s [color=gray40, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe(g: MeanderGraph) -> str:
    rows = [f"meander q({g.a}|{g.b}), n={g.n}"]
    for c in sorted(g.components, key=lambda c: -c.vertices[0]):
        flag = " maximal" if c.maximal else ""
        rows.append(f"  {c.kind} {list(c.vertices)} dim {c.dimension}{flag}")
    return "\n".join(rows)


def iter_pairs(n: int) -> Iterable[tuple[tuple, tuple]]:
    cs = compositions(n)
    for a in cs:
        for b in cs:
            yield a, b
