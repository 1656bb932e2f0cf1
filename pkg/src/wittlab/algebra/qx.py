"""Dense univariate polynomials over Q (little-endian lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

QPoly = list[Fraction]


def trim(f: Sequence) -> QPoly:
    out = [Fraction(c) for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def add(f: Sequence, g: Sequence) -> QPoly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return trim(out)


def neg(f: Sequence) -> QPoly:
    return [-c for c in f]


def sub(f: Sequence, g: Sequence) -> QPoly:
    return add(f, neg(g))


def scale(f: Sequence, c) -> QPoly:
    return trim([a * c for a in f])


def mul(f: Sequence, g: Sequence) -> QPoly:
    if not f or not g:
        return []
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out)


def power(f: Sequence, k: int) -> QPoly:
    out: QPoly = [Fraction(1)]
    for _ in range(k):
        out = mul(out, f)
    return out


def divmod_(f: Sequence, g: Sequence) -> tuple[QPoly, QPoly]:
    g = trim(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    q = [Fraction(0)] * (len(r) - dg)
    lead = g[-1]
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i]
        if c:
            c = c / lead
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] -= c * g[j]
    return trim(q), trim(r[:dg])


def rem(f: Sequence, g: Sequence) -> QPoly:
    return divmod_(f, g)[1]


def monic(f: Sequence) -> QPoly:
    f = trim(f)
    if not f:
        return []
    lead = f[-1]
    return [c / lead for c in f]


def gcd(f: Sequence, g: Sequence) -> QPoly:
    a, b = trim(f), trim(g)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def derivative(f: Sequence) -> QPoly:
    return trim([i * c for i, c in enumerate(f)][1:])


def evaluate(f: Sequence, x):
    acc = Fraction(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


def compose(f: Sequence, g: Sequence) -> QPoly:
    acc: QPoly = []
    for c in reversed(f):
        acc = add(mul(acc, g), [c])
    return acc


def to_text(f: Sequence, var: str = "x") -> str:
    from .poly import SparsePoly

    return SparsePoly((var,), {(i,): c for i, c in enumerate(f) if c}).to_text()
