"""Kostant's cascade of strongly orthogonal roots."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .rootsys import (
    RootSystem,
    SimpleType,
    connected_components,
    highest_root,
    positive_roots_of,
)


@dataclass(frozen=True)
class Cascade:
    members: tuple  # connected subsets K of simple labels, in construction order
    roots: tuple  # theta_K for each member, same order

    def __len__(self):
        return len(self.members)

    def as_dict(self) -> dict:
        return {
            "members": [sorted(k) for k in self.members],
            "roots": [list(r) for r in self.roots],
        }


def _cascade(rs: RootSystem, pi: frozenset) -> list[frozenset]:
    if not pi:
        return []
    comps = connected_components(rs, pi)
    if len(comps) > 1:
        out = []
        for c in comps:
            out.extend(_cascade(rs, c))
        return out
    theta = highest_root(rs, pi)
    t = frozenset(i for i in pi if rs.pairing(theta, rs.simple_root(i)) == 0)
    return [pi] + _cascade(rs, t)


def kostant_cascade(rs: RootSystem, pi: Iterable[int] | None = None) -> Cascade:
    pi = frozenset(rs.simple if pi is None else pi)
    members = _cascade(rs, pi)
    return Cascade(tuple(members), tuple(highest_root(rs, k) for k in members))


def cascade_size(t: SimpleType) -> int:
    f, r = t.family, t.rank
    if f == "A":
        return (r + 1) // 2
    if f in "BC":
        return r
    if f == "D":
        return 2 * (r // 2)
    return {"G2": 2, "F4": 4, "E6": 4, "E7": 7, "E8": 8}[str(t)]


def u_minus_support(rs: RootSystem, pi: Iterable[int]) -> set:
    """Cascade roots of the whole system lying outside Delta_pi^+."""
    inside = set(positive_roots_of(rs, pi))
    return {r for r in kostant_cascade(rs).roots if r not in inside}


def format_cascade(c: Cascade) -> str:
    members = ", ".join("{" + ",".join(f"a{i}" for i in sorted(k)) + "}" for k in c.members)
    roots = "; ".join("(" + ",".join(map(str, r)) + ")" for r in c.roots)
    return f"K = {{{members}}}\nE = {{{roots}}}"
