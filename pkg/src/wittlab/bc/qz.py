"""The group ring Z[Q/Z] with the endomorphisms sigma_n, the maps rho~_n and the retraction r."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any, Iterable, Mapping, Union

from ..algebra.ntheory import split_prime_part

Coef = Union[int, Fraction]


def _frac(g: Any) -> Fraction:
    if isinstance(g, str) and "/" not in g:
        g = Fraction(int(g))
    return Fraction(g) % 1


def _norm_coef(c: Coef) -> Coef:
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class QZElement:
    """Finite sum of c_gamma e(gamma), gamma in Q/Z represented in [0, 1)."""

    __slots__ = ("support",)

    def __init__(self, support: Mapping[Any, Coef] | Iterable[tuple[Any, Coef]] = ()):
        items = support.items() if isinstance(support, Mapping) else support
        out: dict[Fraction, Coef] = {}
        for g, c in items:
            g = _frac(g)
            out[g] = out.get(g, 0) + c
        self.support = {g: _norm_coef(c) for g, c in out.items() if c != 0}

    @classmethod
    def e(cls, gamma: Any, coef: Coef = 1) -> "QZElement":
        return cls({_frac(gamma): coef})

    @classmethod
    def one(cls) -> "QZElement":
        return cls.e(0)

    @classmethod
    def zero(cls) -> "QZElement":
        return cls()

    @classmethod
    def random(cls, rng: random.Random, denominators: Iterable[int], terms: int = 3, size: int = 3) -> "QZElement":
        dens = list(denominators)
        out = {}
        for _ in range(terms):
            b = rng.choice(dens)
            out[Fraction(rng.randrange(b), b)] = rng.choice([c for c in range(-size, size + 1) if c])
        return cls(out)

    def __add__(self, other: "QZElement") -> "QZElement":
        merged = dict(self.support)
        for g, c in other.support.items():
            merged[g] = merged.get(g, 0) + c
        return QZElement(merged)

    def __neg__(self) -> "QZElement":
        return QZElement({g: -c for g, c in self.support.items()})

    def __sub__(self, other: "QZElement") -> "QZElement":
        return self + (-other)

    def __mul__(self, other: Any) -> "QZElement":
        if isinstance(other, (int, Fraction)):
            return QZElement({g: c * other for g, c in self.support.items()})
        out: dict[Fraction, Coef] = {}
        for g, c in self.support.items():
            for h, d in other.support.items():
                k = (g + h) % 1
                out[k] = out.get(k, 0) + c * d
        return QZElement(out)

    __rmul__ = __mul__

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, QZElement) and self.support == other.support

    def __hash__(self) -> int:
        return hash(frozenset(self.support.items()))

    def __bool__(self) -> bool:
        return bool(self.support)

    def denominators(self) -> set[int]:
        return {g.denominator for g in self.support}

    def is_prime_to(self, p: int) -> bool:
        return all(b % p for b in self.denominators())

    def __repr__(self) -> str:
        return f"QZElement({self.to_text()})"

    def to_text(self) -> str:
        if not self.support:
            return "0"
        parts = []
        for g in sorted(self.support):
            c = self.support[g]
            parts.append(("" if c == 1 else f"{c}*") + f"e({g})")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"supp": [[f"{g.numerator}/{g.denominator}", str(self.support[g])] for g in sorted(self.support)]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "QZElement":
        return cls({Fraction(g): _norm_coef(Fraction(c)) for g, c in data["supp"]})


def sigma_n(x: QZElement, n: int) -> QZElement:
    """sigma_n(e(gamma)) = e(n gamma)."""
    return QZElement([(g * n, c) for g, c in x.support.items()])


def rho_tilde_n(x: QZElement, n: int) -> QZElement:
    """rho~_n(e(gamma)) = sum of e(gamma') over the n solutions of n gamma' = gamma."""
    out = []
    for g, c in x.support.items():
        base = g / n
        out.extend(((base + Fraction(j, n)), c) for j in range(n))
    return QZElement(out)


def retraction_gamma(g: Fraction, p: int) -> Fraction:
    """Prime-to-p part a/b of gamma = a/b + c/p^s."""
    g = _frac(g)
    s, b = split_prime_part(g.denominator, p)
    if b == 1:
        return Fraction(0)
    return Fraction(g.numerator * pow(p, -s, b) % b, b)


def retraction(x: QZElement, p: int) -> QZElement:
    """r = id (x) augmentation on Z[mu^(p)] (x) Z[p-power part]."""
    return QZElement([(retraction_gamma(g, p), c) for g, c in x.support.items()])


def r_rho_formula(gamma: Any, n: int, p: int) -> QZElement:
    """Closed form of r(rho~_n(e(gamma))) for gamma = a/b with b prime to p."""
    gamma = _frac(gamma)
    a, b = gamma.numerator, gamma.denominator
    if b % p == 0:
        raise ValueError(f"denominator {b} is divisible by p = {p}")
    k, m = split_prime_part(n, p)
    bm = b * m
    # p^k y = a/(bm) in Q/Z with y = f/(bm)
    f = a * pow(p, -k, bm) % bm if bm > 1 else 0
    return QZElement([(Fraction(f + w * b, bm), p**k) for w in range(m)])


def frobenius_qz(x: QZElement, p: int) -> QZElement:
    """fr(e(gamma)) = e(p gamma) on Z[mu^(p)]."""
    return sigma_n(x, p)
