"""Artin-Schreier towers over F_p: the Witt-vector tower and the dSL chain.

A tower is a list of relations y_k^p = y_k + alpha_k with alpha_k a
polynomial in y_0..y_{k-1}.  Elements are kept in normal form (every
exponent below p), which makes each level an F_p-vector space of dimension
p^{k+1}.  X^p - X - a is irreducible over a finite field K exactly when the
absolute trace of a is nonzero, which is how each step is certified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ..algebra.poly import SparsePoly
from ..algebra.rings import PolynomialRing
from ..witt.universal import universal_poly

Monomial = tuple[int, ...]
Element = dict[Monomial, int]


class Degenerate(ArithmeticError):
    """A step of the chain hit an excluded value (y_k = -1)."""


class ArtinSchreierTower:
    def __init__(self, p: int, names: Iterable[str] = ()):
        self.p = p
        self.names: list[str] = list(names)
        self.alphas: list[Element] = []

    @property
    def height(self) -> int:
        return len(self.alphas)

    @property
    def degree(self) -> int:
        return self.p**self.height

    # -- elements -------------------------------------------------------
    def _pad(self, e: Monomial) -> Monomial:
        return tuple(e) + (0,) * (self.height - len(e))

    def const(self, c: int) -> Element:
        c %= self.p
        return {self._pad(()): c} if c else {}

    def var(self, k: int) -> Element:
        e = [0] * self.height
        e[k] = 1
        return {tuple(e): 1}

    def add(self, a: Element, b: Element, sign: int = 1) -> Element:
        out = dict(a)
        for m, c in b.items():
            m = self._pad(m)
            v = (out.get(m, 0) + sign * c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def scale(self, a: Element, c: int) -> Element:
        c %= self.p
        return {m: v * c % self.p for m, v in a.items()} if c else {}

    def reduce(self, a: Element) -> Element:
        p = self.p
        out: Element = {}
        work = [(self._pad(m), c) for m, c in a.items()]
        while work:
            m, c = work.pop()
            c %= p
            if not c:
                continue
            high = next((i for i in range(len(m) - 1, -1, -1) if m[i] >= p), None)
            if high is None:
                v = (out.get(m, 0) + c) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
                continue
            rest = list(m)
            rest[high] -= p
            # y^p = y + alpha
            plus = list(rest)
            plus[high] += 1
            work.append((tuple(plus), c))
            for am, ac in self.alphas[high].items():
                am = self._pad(am)
                work.append((tuple(x + y for x, y in zip(rest, am)), c * ac))
        return out

    def mul(self, a: Element, b: Element) -> Element:
        raw: Element = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = tuple(x + y for x, y in zip(self._pad(m1), self._pad(m2)))
                raw[m] = (raw.get(m, 0) + c1 * c2) % self.p
        return self.reduce(raw)

    def pow(self, a: Element, k: int) -> Element:
        result = self.const(1)
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def frobenius(self, a: Element) -> Element:
        return self.reduce({tuple(x * self.p for x in self._pad(m)): c for m, c in a.items()})

    def trace(self, a: Element) -> int:
        """Absolute trace to F_p of an element of the current top field."""
        total: Element = {}
        x = a
        for _ in range(self.degree):
            total = self.add(total, x)
            x = self.frobenius(x)
        if any(any(m) for m in total):
            raise AssertionError("trace did not land in F_p")
        return total.get(self._pad(()), 0)

    def inverse(self, a: Element) -> Element:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        inv = self.pow(a, self.p**self.degree - 2)
        if self.mul(a, inv) != self.const(1):
            raise AssertionError("inverse check failed")
        return inv

    def is_zero(self, a: Element) -> bool:
        return not a

    # -- growth ---------------------------------------------------------
    def adjoin(self, name: str, alpha: Element) -> bool:
        """Adjoin a root of X^p - X - alpha; returns whether the step is irreducible."""
        irreducible = self.trace(alpha) != 0
        self.alphas = [{self._pad(m) + (0,): c for m, c in al.items()} for al in self.alphas]
        self.names.append(name)
        self.alphas.append({m + (0,): c for m, c in (self.reduce(alpha)).items()})
        return irreducible

    def to_poly(self, a: Element) -> SparsePoly:
        return SparsePoly(tuple(self.names), {self._pad(m): c for m, c in a.items()}, self.p)


@dataclass
class TowerLevel:
    level: int
    variable: str
    relation: SparsePoly  # right-hand side of y^p = relation
    irreducible: bool
    degree: int

    def equation(self) -> str:
        return f"{self.variable}^{self.relation.modulus} = {self.relation.to_text()}"

    def to_json(self, p: int) -> dict:
        return {"p": p, "level": self.level, "poly": self.equation(), "irreducible": self.irreducible}


def _raw_relation(p: int, j: int, names: list[str]) -> SparsePoly:
    """Component p^j of x + 1 in p-typical coordinates, reduced mod p."""
    n = p**j
    mu = universal_poly("add", n)
    ring = PolynomialRing(names, modulus=p)
    values = {}
    for d in mu.vars:
        idx = int(d[1:])
        k = 0
        while p**k < idx:
            k += 1
        if d[0] == "x":
            values[d] = ring.gen(names[k]) if p**k == idx else ring.zero()
        else:
            values[d] = ring.one() if idx == 1 else ring.zero()
    return mu.evaluate(values, ring)


def witt_as_tower(p: int, levels: int, form: str = "raw") -> list[TowerLevel]:
    """Relations x_j^p = R_j(x_0..x_j) from F(x) = x + 1 in W_{p^oo}(F_p-bar).

    ``form="raw"`` keeps R_j exactly as the reduced Witt addition polynomial;
    ``form="reduced"`` additionally rewrites R_j modulo the lower relations so
    that no lower variable appears with exponent >= p.
    """
    if form not in ("raw", "reduced"):
        raise ValueError("form must be 'raw' or 'reduced'")
    names = [f"x{j}" for j in range(levels)]
    tower = ArtinSchreierTower(p)
    out: list[TowerLevel] = []
    for j in range(levels):
        rel = _raw_relation(p, j, names[: j + 1])
        alpha_poly = rel - SparsePoly.var(names[j], rel.vars, p)
        if alpha_poly.degree_in(names[j]) > 0:
            raise AssertionError(f"relation {j} is not of Artin-Schreier shape")
        alpha = {e[:j]: c for e, c in alpha_poly.terms.items()}
        alpha = tower.reduce(alpha) if j else alpha
        irreducible = tower.adjoin(names[j], alpha if j else tower.const(alpha_poly.constant_term()))
        if form == "reduced":
            rhs = tower.to_poly(tower.add(tower.var(j), tower.alphas[j]))
            rel = rhs
        out.append(TowerLevel(j, names[j], rel, irreducible, tower.degree))
    return out


def dsl_chain(p: int, steps: int) -> list[TowerLevel]:
    """y_0^p - y_0 = 1 and y_{k+1}^p - y_{k+1} = -y_k/(y_k + 1)."""
    tower = ArtinSchreierTower(p)
    out: list[TowerLevel] = []
    for k in range(steps):
        name = f"y{k}"
        if k == 0:
            alpha = tower.const(1)
        else:
            yk = tower.var(k - 1)
            denom = tower.add(yk, tower.const(1))
            if tower.is_zero(denom):
                raise Degenerate(f"y{k - 1} = -1")
            alpha = tower.scale(tower.mul(yk, tower.inverse(denom)), -1)
        irreducible = tower.adjoin(name, alpha)
        rel = tower.to_poly(tower.add(tower.var(k), tower.alphas[k]))
        out.append(TowerLevel(k, name, rel, irreducible, tower.degree))
    return out
