"""Dirichlet characters, their p-adic L-values at beta = 1 - m, and the decomposition of Z(a/b).

A character mod b is stored as its angle table: chi(c) = zeta_{t(c)} with
t(c) in Q/Z for every unit c.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Any

from ..algebra.cyclo import CycloElement
from ..algebra.ntheory import divisors, factorint, prime_divisors, totient
from .values import check_exact_m, weighted_value


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    angles: tuple[tuple[int, Fraction], ...]  # (unit, t) pairs sorted by unit

    @property
    def table(self) -> dict[int, Fraction]:
        return dict(self.angles)

    def angle(self, c: int) -> Fraction | None:
        c %= self.modulus
        return self.table.get(c) if gcd(c, self.modulus) == 1 else None

    def __call__(self, c: int) -> CycloElement:
        t = self.angle(c)
        return CycloElement.rational(0) if t is None else CycloElement.e(t)

    @property
    def is_trivial(self) -> bool:
        return all(t == 0 for _, t in self.angles)

    @property
    def parity(self) -> int:
        if self.modulus <= 2:
            return 1
        return 1 if self.angle(-1) == 0 else -1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    @property
    def conductor(self) -> int:
        table = self.table
        for f in divisors(self.modulus):
            if all(t == 0 for c, t in table.items() if c % f == 1 % f):
                return f
        return self.modulus

    def primitive(self) -> "DirichletCharacter":
        f = self.conductor
        out = {}
        for c in range(f):
            if gcd(c, f) != 1:
                continue
            lift = next(x for x in range(c, c + f * self.modulus + 1, f) if gcd(x, self.modulus) == 1)
            out[c % f if f > 1 else 0] = self.table[lift % self.modulus]
        return DirichletCharacter(f, tuple(sorted(out.items())))

    def inverse_value(self, c: int) -> CycloElement:
        t = self.angle(c)
        return CycloElement.rational(0) if t is None else CycloElement.e(-t)


def _generators(b: int) -> list[tuple[int, int]]:
    """(generator, order) pairs of (Z/b)^x as a product of cyclic groups, lifted by CRT."""
    gens: list[tuple[int, int]] = []
    for ell, e in factorint(b) if b > 1 else ():
        q = ell**e
        rest = b // q

        def lift(x: int) -> int:
            # x mod q, 1 mod rest
            return (x * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % b if rest > 1 else x % b

        if ell == 2:
            if e >= 2:
                gens.append((lift(q - 1), 2))
            if e >= 3:
                gens.append((lift(5), q // 4))
        else:
            order = totient(q)
            g = next(
                x
                for x in range(2, q)
                if gcd(x, ell) == 1 and all(pow(x, order // r, q) != 1 for r in prime_divisors(order))
            )
            gens.append((lift(g), order))
    return gens


@lru_cache(maxsize=None)
def dirichlet_characters(b: int) -> tuple[DirichletCharacter, ...]:
    """All characters modulo b, the trivial one first."""
    gens = _generators(b)
    # discrete logs with respect to the generators
    logs: dict[int, tuple[int, ...]] = {1 % b: (0,) * len(gens)}
    for exps in product(*(range(o) for _, o in gens)):
        x = 1
        for (g, _), k in zip(gens, exps):
            x = x * pow(g, k, b) % b
        logs[x % b if b > 1 else 0] = exps
    out = []
    for ts in product(*(range(o) for _, o in gens)):
        table = {}
        for c, exps in logs.items():
            table[c] = sum((Fraction(t * k, o) for t, k, (_, o) in zip(ts, exps, gens)), Fraction(0)) % 1
        out.append(DirichletCharacter(max(b, 1), tuple(sorted(table.items()))))
    return tuple(out)


def l_value(chi: DirichletCharacter, m: int, p: int) -> CycloElement:
    """L_p(1 - m, chi) for the primitive character attached to chi."""
    prim = chi.primitive()
    f = prim.conductor
    if f % p == 0:
        raise ValueError("conductor must be prime to p")
    return weighted_value(prim, f, m, p)


def euler_adjusted(chi: DirichletCharacter, m: int, p: int) -> CycloElement:
    """Y(z(chi, b), 1 - m) via L_p(chi) prod (1 - chi(l) l^{-1} <l>^{m}) over l | b, l not | f_chi."""
    prim = chi.primitive()
    f = prim.conductor
    value = l_value(chi, m, p)
    for ell in prime_divisors(chi.modulus) if chi.modulus > 1 else ():
        if f % ell:
            value = value * (1 - prim(ell) * Fraction(ell**m, ell))
    return value


def decomposition(gamma: Any, m: int, p: int) -> list[tuple[int, DirichletCharacter, CycloElement]]:
    """Coefficients c(d, chi) with zeta_gamma^x = sum c(d, chi) e_d(z(chi, b/d))(x) on Z/bZ.

    Ordering: divisors d ascending, then characters mod b/d in generation order.
    """
    g = Fraction(gamma) % 1
    b = g.denominator
    out = []
    for d in divisors(b):
        mm = b // d
        phi = totient(mm)
        xs = [x for x in range(b) if gcd(x, b) == d or (mm == 1 and x == 0)]
        for chi in dirichlet_characters(mm):
            c = CycloElement.rational(0)
            for x in xs:
                c = c + CycloElement.e(g * x) * chi.inverse_value(x // d)
            c = c * Fraction(1, phi)
            if c:
                out.append((d, chi, c))
    return out


def decomposed_value(gamma: Any, m: int, p: int) -> CycloElement:
    """sum c(d, chi) d^{-1} <d>^m Y(z(chi, b/d), 1 - m); equals Z(gamma, 1 - m)."""
    check_exact_m(m, p)
    total = CycloElement.rational(0)
    for d, chi, c in decomposition(gamma, m, p):
        total = total + c * euler_adjusted(chi, m, p) * Fraction(d**m, d)
    return total
