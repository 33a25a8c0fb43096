"""Reductive Lie algebra types: a multiset of simple factors plus a central torus.

Small-rank coincidences are folded into one canonical name so that two
descriptions of the same algebra compare equal:

    so_1 = sp_0 = 0,  so_2 = C (centre),  so_3 = sp_2 = B1 = C1 = A1,
    so_4 = D2 = 2 A1,  so_5 = sp_4 = B2 = C2,  so_6 = D3 = A3.

B2 is stored as C2.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

_EXC_DIM = {("G", 2): 14, ("F", 4): 52, ("E", 6): 78, ("E", 7): 133, ("E", 8): 248}


def _canon(family: str, rank: int) -> tuple[list[tuple[str, int]], int]:
    """Canonical simple factors and extra centre for a Cartan label."""
    if rank == 0:
        return [], 0
    if family in "BC" and rank == 1:
        return [("A", 1)], 0
    if family == "B" and rank == 2:
        return [("C", 2)], 0
    if family == "D":
        if rank == 1:
            return [], 1
        if rank == 2:
            return [("A", 1), ("A", 1)], 0
        if rank == 3:
            return [("A", 3)], 0
    if family not in "ABCDEFG":
        raise ValueError(f"unknown family {family!r}")
    return [(family, rank)], 0


def simple_dim(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 2)
    if family in "BC":
        return rank * (2 * rank + 1)
    if family == "D":
        return rank * (2 * rank - 1)
    return _EXC_DIM[(family, rank)]


@dataclass(frozen=True)
class ReductiveType:
    factors: tuple = ()  # sorted tuple of (family, rank)
    center: int = 0

    @classmethod
    def make(cls, factors=(), center: int = 0) -> "ReductiveType":
        out: list = []
        for fam, r in factors:
            fs, c = _canon(fam, r)
            out.extend(fs)
            center += c
        return cls(tuple(sorted(out)), center)

    @classmethod
    def zero(cls) -> "ReductiveType":
        return cls((), 0)

    @classmethod
    def so(cls, k: int) -> "ReductiveType":
        if k <= 1:
            return cls.zero()
        return cls.make([("B", k // 2)] if k % 2 else [("D", k // 2)])

    @classmethod
    def sp(cls, k: int) -> "ReductiveType":
        if k % 2:
            raise ValueError("sp_k needs k even")
        return cls.make([("C", k // 2)])

    @classmethod
    def gl(cls, k: int) -> "ReductiveType":
        return cls.make([("A", k - 1)], 1)

    @classmethod
    def torus(cls, k: int) -> "ReductiveType":
        return cls((), k)

    def __add__(self, other: "ReductiveType") -> "ReductiveType":
        return ReductiveType(tuple(sorted(self.factors + other.factors)), self.center + other.center)

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors) + self.center

    @property
    def dim(self) -> int:
        return sum(simple_dim(f, r) for f, r in self.factors) + self.center

    @property
    def derived_dim(self) -> int:
        return self.dim - self.center

    def invariants(self) -> tuple[int, int, int, int]:
        """(dim, rank, dim of derived algebra, dim of centre)."""
        return (self.dim, self.rank, self.derived_dim, self.center)

    def drop_center(self, k: int = 1) -> "ReductiveType":
        if self.center < k:
            raise ValueError("not enough centre to drop")
        return ReductiveType(self.factors, self.center - k)

    def __str__(self):
        parts = []
        counts = Counter(self.factors)
        # largest factors first, as in the usual tables
        for (fam, r) in sorted(counts, key=lambda x: (-x[1], x[0])):
            k = counts[(fam, r)]
            parts.append(f"{k if k > 1 else ''}{fam}{r}")
        if self.center:
            parts.append(f"{self.center if self.center > 1 else ''}ℂ")
        return " ⊕ ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> "ReductiveType":
        """Parse strings such as ``"2A1 ⊕ ℂ"``, ``"B3+C"``, ``"so_3 ⊕ sp_4"``, ``"0"``."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        out = cls.zero()
        for tok in re.split(r"\s*(?:⊕|\+)\s*", text):
            tok = tok.replace(" ", "")
            m = re.fullmatch(r"(\d*)(ℂ|C)", tok)
            if m:
                out = out + cls.torus(int(m.group(1) or 1))
                continue
            m = re.fullmatch(r"(\d*)(so|sp|gl)_?\{?(\d+)\}?", tok)
            if m:
                k = int(m.group(1) or 1)
                piece = getattr(cls, m.group(2))(int(m.group(3)))
                for _ in range(k):
                    out = out + piece
                continue
            m = re.fullmatch(r"(\d*)([A-G])(\d+)", tok)
            if m:
                k = int(m.group(1) or 1)
                piece = cls.make([(m.group(2), int(m.group(3)))])
                for _ in range(k):
                    out = out + piece
                continue
            if tok == "0":
                continue
            raise ValueError(f"cannot parse reductive type token {tok!r}")
        return out

    def as_dict(self) -> dict:
        return {"factors": [f"{f}{r}" for f, r in self.factors], "center": self.center, "text": str(self)}
