"""Univariate polynomials over Q and F_p, and characteristic polynomials.

Polynomials are lists of coefficients, lowest degree first, without trailing
zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence


def trim(f: list) -> list:
    while f and not f[-1]:
        f.pop()
    return f


# --------------------------------------------------------------------------
# over Q


def charpoly(m: Sequence[Sequence]) -> list[Fraction]:
    """det(t I - m) by Faddeev-LeVerrier (exact)."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]  # M_0 = 0, M_1 = I
    for k in range(1, n + 1):
        if k > 1:
            prod = _matmul(a, mk)
            c = coeffs[n - k + 1]
            mk = [[prod[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        am = _matmul(a, mk)
        coeffs[n - k] = -sum(am[i][i] for i in range(n)) / k
    return coeffs


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(p):
                    if bk[j]:
                        oi[j] += x * bk[j]
    return out


def derivative(f: Sequence) -> list:
    return trim([k * f[k] for k in range(1, len(f))])


def divmod_q(f: Sequence, g: Sequence) -> tuple[list, list]:
    f = [Fraction(x) for x in f]
    g = trim([Fraction(x) for x in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    r = trim(list(f))
    while len(r) >= len(g):
        c = r[-1] / g[-1]
        s = len(r) - len(g)
        q[s] = c
        for i, gi in enumerate(g):
            r[s + i] -= c * gi
        trim(r)
    return trim(q), r


def gcd_q(f: Sequence, g: Sequence) -> list[Fraction]:
    a, b = trim([Fraction(x) for x in f]), trim([Fraction(x) for x in g])
    while b:
        a, b = b, divmod_q(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def squarefree_part(f: Sequence) -> list[Fraction]:
    g = gcd_q(f, derivative(f))
    return divmod_q(f, g)[0] if len(g) > 1 else trim([Fraction(x) for x in f])


def eval_at_matrix(f: Sequence, m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    out = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(f):
        out = _matmul(out, a)
        for i in range(n):
            out[i][i] += c
    return out


def is_semisimple_matrix(m: Sequence[Sequence]) -> bool:
    """Diagonalisable over the algebraic closure iff the squarefree part of
    the characteristic polynomial annihilates m."""
    if not m:
        return True
    s = squarefree_part(charpoly(m))
    return not any(x for row in eval_at_matrix(s, m) for x in row)


# --------------------------------------------------------------------------
# over F_p


def charpoly_mod(m: Sequence[Sequence[int]], p: int) -> list[int]:
    n = len(m)
    a = [[x % p for x in row] for row in m]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        if k > 1:
            prod = _matmul_mod(a, mk, p)
            c = coeffs[n - k + 1]
            mk = [[(prod[i][j] + (c if i == j else 0)) % p for j in range(n)] for i in range(n)]
        am = _matmul_mod(a, mk, p)
        coeffs[n - k] = (-sum(am[i][i] for i in range(n)) * pow(k, -1, p)) % p
    return coeffs


def _matmul_mod(a, b, p):
    n, m, q = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        ai = a[i]
        row = [0] * q
        for k in range(m):
            x = ai[k]
            if x:
                bk = b[k]
                for j in range(q):
                    row[j] += x * bk[j]
        out.append([v % p for v in row])
    return out


def _mulmod_poly(f, g, mod, p):
    out = [0] * (len(f) + len(g) - 1) if f and g else []
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    out = [x % p for x in out]
    return _rem(out, mod, p)


def _rem(f, g, p):
    f = trim([x % p for x in f])
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        s = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[s + i] = (f[s + i] - c * gi) % p
        trim(f)
    return f


def gcd_mod(f, g, p):
    a, b = trim([x % p for x in f]), trim([x % p for x in g])
    while b:
        a, b = b, _rem(a, b, p)
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _powmod_x(e, a, mod, p):
    """(t + a)^e modulo mod."""
    result = [1]
    base = _rem([a % p, 1], mod, p)
    while e:
        if e & 1:
            result = _mulmod_poly(result, base, mod, p)
        base = _mulmod_poly(base, base, mod, p)
        e >>= 1
    return result


def _sub(f, g, p):
    n = max(len(f), len(g))
    return trim([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def distinct_roots_mod(f: Sequence[int], p: int, rng: random.Random | None = None) -> list[int]:
    """All roots in F_p of f (p odd), by Cantor-Zassenhaus."""
    rng = rng or random.Random(0)
    f = trim([x % p for x in f])
    if len(f) <= 1:
        return []
    # product of the distinct linear factors: gcd(t^p - t, f)
    tp = _powmod_x(p, 0, f, p)
    g = gcd_mod(f, _sub(tp, [0, 1], p), p)
    out: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d <= 0:
            continue
        if d == 1:
            out.append((-h[0] * pow(h[1], -1, p)) % p)
            continue
        while True:
            a = rng.randrange(p)
            w = _sub(_powmod_x((p - 1) // 2, a, h, p), [1], p)
            u = gcd_mod(h, w, p)
            if 0 < len(u) - 1 < d:
                stack.append(u)
                stack.append(_divexact_mod(h, u, p))
                break
    return sorted(out)


def _divexact_mod(f, g, p):
    f = [x % p for x in f]
    inv = pow(g[-1], -1, p)
    q = [0] * (len(f) - len(g) + 1)
    r = list(f)
    for s in range(len(q) - 1, -1, -1):
        c = r[s + len(g) - 1] * inv % p
        q[s] = c
        for i, gi in enumerate(g):
            r[s + i] = (r[s + i] - c * gi) % p
    return trim(q)


def split_roots_mod(f: Sequence[int], p: int, rng: random.Random | None = None) -> dict[int, int] | None:
    """Roots with multiplicities if f splits into linear factors over F_p, else None."""
    f = trim([x % p for x in f])
    roots = distinct_roots_mod(f, p, rng)
    mult: dict[int, int] = {}
    rest = f
    for r in roots:
        lin = [(-r) % p, 1]
        k = 0
        while len(rest) > 1 and not _rem(rest, lin, p):
            rest = _divexact_mod(rest, lin, p)
            k += 1
        mult[r] = k
    return mult if len(rest) == 1 else None
