"""Divisors of eigenvalues: the model Z[k^x] of W_0 over a finite level of F_p-bar.

A divisor is a finite formal sum of nonzero field elements.  F_n acts by
[a] -> [a^n]; V_n sends [a] to p^k times the sum of the m distinct n-th
roots of a, where n = p^k m.  The map L sends [a] to (1 - a t)^{-1}.
"""

from __future__ import annotations

from math import gcd
from typing import Any, Iterable, Mapping

from ..algebra.ntheory import split_prime_part
from ..algebra.rings import FiniteField
from .lam import LambdaSeries, series_mul


class RootUnavailable(ValueError):
    """The field level does not contain the required roots."""


class Divisor:
    __slots__ = ("field", "support")

    def __init__(self, field: FiniteField, support: Mapping[Any, int] | Iterable[tuple[Any, int]] = ()):
        items = support.items() if isinstance(support, Mapping) else support
        clean: dict[tuple[int, ...], int] = {}
        for elem, mult in items:
            elem = tuple(elem)
            if field.is_zero(elem):
                raise ValueError("the zero element cannot appear in a divisor")
            clean[elem] = clean.get(elem, 0) + int(mult)
        self.field = field
        self.support = {k: v for k, v in clean.items() if v}

    @classmethod
    def point(cls, field: FiniteField, a: Any, mult: int = 1) -> "Divisor":
        return cls(field, {tuple(a): mult})

    def _same(self, other: "Divisor") -> None:
        if self.field != other.field:
            raise ValueError("divisors over different fields")

    def __add__(self, other: "Divisor") -> "Divisor":
        self._same(other)
        merged = dict(self.support)
        for k, v in other.support.items():
            merged[k] = merged.get(k, 0) + v
        return Divisor(self.field, merged)

    def __neg__(self) -> "Divisor":
        return Divisor(self.field, {k: -v for k, v in self.support.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __rmul__(self, k: int) -> "Divisor":
        return Divisor(self.field, {a: k * v for a, v in self.support.items()})

    def __mul__(self, other: "Divisor") -> "Divisor":
        """Bilinear extension of [a][b] = [ab] (the tensor product of rank-one classes)."""
        if isinstance(other, int):
            return other * self
        self._same(other)
        out: dict[tuple[int, ...], int] = {}
        for a, u in self.support.items():
            for b, v in other.support.items():
                ab = self.field.mul(a, b)
                out[ab] = out.get(ab, 0) + u * v
        return Divisor(self.field, out)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Divisor) and self.field == other.field and self.support == other.support

    def __hash__(self) -> int:
        return hash((self.field, frozenset(self.support.items())))

    def degree(self) -> int:
        return sum(self.support.values())

    def __repr__(self) -> str:
        body = " + ".join(f"{v}[{self.field.to_str(a)}]" for a, v in sorted(self.support.items()))
        return f"Divisor({body or '0'})"

    def to_json(self) -> dict:
        return {
            "field": self.field.name,
            "support": [[self.field.to_str(a), v] for a, v in sorted(self.support.items())],
        }


def nth_roots(field: FiniteField, a: Any, m: int) -> list[tuple[int, ...]]:
    """All x in the field with x^m = a (a nonzero)."""
    N = field.order - 1
    try:
        e = field.log(a)
    except ValueError:
        return sorted(x for x in field.elements() if any(x) and field.pow(x, m) == tuple(a))
    g = gcd(m, N)
    if e % g:
        return []
    # m j = e (mod N): one solution j0 modulo N/g, then g lifts
    step = N // g
    j0 = (e // g) * pow(m // g, -1, step) % step if step > 1 else 0
    gen = field.gen
    return sorted(field.pow(gen, j0 + i * step) for i in range(g))


def frobenius_root(field: FiniteField, a: Any, k: int) -> tuple[int, ...]:
    """The unique p^k-th root in a finite field."""
    d = field.degree
    shift = (-k) % d
    return field.pow(a, field.p**shift) if shift else tuple(a)


def divisor_fn(D: Divisor, n: int) -> Divisor:
    field = D.field
    out: dict[tuple[int, ...], int] = {}
    for a, v in D.support.items():
        an = field.pow(a, n)
        out[an] = out.get(an, 0) + v
    return Divisor(field, out)


def divisor_vn(D: Divisor, n: int) -> Divisor:
    field = D.field
    k, m = split_prime_part(n, field.p)
    out: dict[tuple[int, ...], int] = {}
    for a, v in D.support.items():
        base = frobenius_root(field, a, k)
        roots = nth_roots(field, base, m)
        if len(roots) != m:
            raise RootUnavailable(
                f"only {len(roots)} of the {m} roots of X^{m} = {field.to_str(base)} lie in {field.name}"
            )
        for r in roots:
            out[r] = out.get(r, 0) + v * field.p**k
    return Divisor(field, out)


def l_map(D: Divisor, T: int) -> LambdaSeries:
    """L(D) = prod (1 - a t)^{-mult(a)} truncated at degree T."""
    field = D.field
    acc = [field.one()] + [field.zero()] * T
    for a, v in D.support.items():
        if v > 0:
            factor = LambdaSeries.geometric(field, T, a).full()
        else:
            factor = [field.one(), field.neg(a)] + [field.zero()] * (T - 1)
        for _ in range(abs(v)):
            acc = series_mul(acc, factor, field, T)
    return LambdaSeries(field, acc[1:])
