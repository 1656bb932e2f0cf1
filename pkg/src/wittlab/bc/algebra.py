"""Monomial normal form mu~_a X mu*_b (gcd(a, b) = 1) and the product on the integral BC algebra."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Any, Iterable, Mapping

from .qz import QZElement, retraction, rho_tilde_n, sigma_n

Key = tuple[int, int]


class BCElement:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, QZElement] | Iterable[tuple[Key, QZElement]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[Key, QZElement] = {}
        for (a, b), x in items:
            if a < 1 or b < 1:
                raise ValueError(f"monomial indices must be positive, got ({a}, {b})")
            g = gcd(a, b)
            if g > 1:
                a, b, x = a // g, b // g, rho_tilde_n(x, g)
            out[(a, b)] = out.get((a, b), QZElement()) + x
        self.terms = {k: v for k, v in out.items() if v}

    # -- constructors ---------------------------------------------------
    @classmethod
    def monomial(cls, a: int, x: QZElement | None = None, b: int = 1) -> "BCElement":
        return cls({(a, b): QZElement.one() if x is None else x})

    @classmethod
    def one(cls) -> "BCElement":
        return cls.monomial(1, QZElement.one(), 1)

    @classmethod
    def scalar(cls, x: QZElement) -> "BCElement":
        return cls.monomial(1, x, 1)

    @classmethod
    def e(cls, gamma: Any, coef: int | Fraction = 1) -> "BCElement":
        return cls.scalar(QZElement.e(gamma, coef))

    @classmethod
    def mu_tilde(cls, n: int) -> "BCElement":
        return cls.monomial(n, QZElement.one(), 1)

    @classmethod
    def mu_star(cls, n: int) -> "BCElement":
        return cls.monomial(1, QZElement.one(), n)

    @classmethod
    def mu(cls, n: int) -> "BCElement":
        """mu_n = (1/n) mu~_n."""
        return cls.monomial(n, QZElement.e(0, Fraction(1, n)), 1)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: "BCElement") -> "BCElement":
        return BCElement(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "BCElement":
        return BCElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "BCElement") -> "BCElement":
        return self + (-other)

    def __mul__(self, other: Any) -> "BCElement":
        if isinstance(other, (int, Fraction)):
            return BCElement({k: v * other for k, v in self.terms.items()})
        return bc_mul(self, other)

    def __rmul__(self, other: Any) -> "BCElement":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, BCElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, a: int = 1, b: int = 1) -> QZElement:
        return self.terms.get((a, b), QZElement())

    def __repr__(self) -> str:
        return f"BCElement({self.to_text()})"

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms):
            body = f"({self.terms[(a, b)].to_text()})"
            left = f"mu~{a} " if a > 1 else ""
            right = f" mu*{b}" if b > 1 else ""
            parts.append(left + body + right)
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"a": a, "b": b, "coef": self.terms[(a, b)].to_json()} for (a, b) in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "BCElement":
        return cls([((int(t["a"]), int(t["b"])), QZElement.from_json(t["coef"])) for t in data["terms"]])


def monomial_product(n: int, X: QZElement, m: int, s: int, Y: QZElement, t: int) -> tuple[int, QZElement, int]:
    """(mu~_n X mu*_m)(mu~_s Y mu*_t) = mu~_w Z mu*_z in normal form."""
    u = gcd(m, s)
    m1, s1 = m // u, s // u
    # mu*_{m'} and mu~_{s'} commute; move sigma across
    inner = sigma_n(X, s1) * sigma_n(Y, m1)
    a, b = n * s1, m1 * t
    v = gcd(a, b)
    return a // v, rho_tilde_n(inner, v) * u, b // v


def bc_mul(x: BCElement, y: BCElement) -> BCElement:
    out: list[tuple[Key, QZElement]] = []
    for (n, m), X in x.terms.items():
        for (s, t), Y in y.terms.items():
            w, Z, z = monomial_product(n, X, m, s, Y, t)
            out.append(((w, z), Z))
    return BCElement(out)


def jp_membership(x: BCElement, p: int) -> bool:
    """x lies in J_p exactly when every normal-form coefficient is killed by r."""
    return all(not retraction(c, p) for c in x.terms.values())


def bc_retraction(x: BCElement, p: int) -> BCElement:
    return BCElement({k: retraction(c, p) for k, c in x.terms.items()})
