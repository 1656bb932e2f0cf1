"""Finite-field towers from a compatible sequence, Frobenius orbits and trace invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from ..algebra.ntheory import multiplicative_order, valuation
from ..algebra.rings import FiniteField
from .conway import ConwaySequence


class MissingLevel(ValueError):
    pass


class FieldTower:
    """Levels K_n = F_p[T]/(P_n) with embeddings T_m -> T_n^d for m | n."""

    def __init__(self, seq: ConwaySequence):
        self.seq = seq
        self.p = seq.p
        self._levels: dict[int, FiniteField] = {}

    def level(self, n: int) -> FiniteField:
        if n not in self.seq:
            raise MissingLevel(f"level {n} is not available (sequence has {self.seq.levels})")
        K = self._levels.get(n)
        if K is None:
            K = FiniteField(self.p, self.seq[n], name=f"K{n}")
            self._levels[n] = K
        return K

    def xi(self, n: int) -> tuple[int, ...]:
        """The primitive (p^n - 1)-th root of unity T in K_n."""
        return self.level(n).gen

    def embed(self, a: Iterable[int], m: int, n: int) -> tuple[int, ...]:
        if n % m:
            raise ValueError(f"{m} does not divide {n}")
        Kn = self.level(n)
        d = (self.p**n - 1) // (self.p**m - 1)
        image = Kn.pow(Kn.gen, d)
        acc = Kn.zero()
        for c in reversed(tuple(a)):
            acc = Kn.add(Kn.mul(acc, image), Kn.from_int(c))
        return acc

    def root_of_unity(self, gamma: Fraction, n: int | None = None) -> tuple[int, tuple[int, ...]]:
        """(level, image of e(gamma)) with e(a/b) -> xi^{a (p^n - 1)/b}."""
        gamma = Fraction(gamma) % 1
        b = gamma.denominator
        if b % self.p == 0:
            raise ValueError(f"denominator {b} is divisible by p = {self.p}")
        if n is None:
            n = multiplicative_order(self.p, b) if b > 1 else 1
        N = self.p**n - 1
        if N % b:
            raise MissingLevel(f"level {n} does not contain the {b}-th roots of unity")
        K = self.level(n)
        return n, K.pow(K.gen, gamma.numerator * (N // b))


@dataclass(frozen=True)
class FrobeniusOrbit:
    p: int
    elements: tuple[Fraction, ...]

    @property
    def representative(self) -> Fraction:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return "{" + ", ".join(str(g) for g in self.elements) + "}"


def frobenius_orbit(gamma: Fraction | str, p: int) -> FrobeniusOrbit:
    gamma = Fraction(gamma) % 1
    if gamma.denominator % p == 0:
        raise ValueError(f"denominator {gamma.denominator} is divisible by p = {p}")
    elems = {gamma}
    g = gamma * p % 1
    while g != gamma:
        elems.add(g)
        g = g * p % 1
    return FrobeniusOrbit(p, tuple(sorted(elems)))


def orbits_at_level(p: int, n: int) -> list[FrobeniusOrbit]:
    """Orbits of the (p^n - 1)-th roots of unity, ordered by representative."""
    N = p**n - 1
    seen: set[Fraction] = set()
    out = []
    for a in range(N):
        g = Fraction(a, N)
        if g not in seen:
            orb = frobenius_orbit(g, p)
            seen.update(orb.elements)
            out.append(orb)
    return out


class TraceInvariant:
    """The F_p-valued function on Frobenius orbits determined by a tower."""

    def __init__(self, tower: FieldTower):
        self.tower = tower
        self.p = tower.p
        self._cache: dict[Fraction, int] = {}

    def __call__(self, orbit: FrobeniusOrbit | Fraction, level: int | None = None) -> int:
        if not isinstance(orbit, FrobeniusOrbit):
            orbit = frobenius_orbit(orbit, self.p)
        rep = orbit.representative
        if level is None and rep in self._cache:
            return self._cache[rep]
        value = trace_invariant(self.tower, orbit, level)
        if level is None:
            self._cache[rep] = value
        return value

    def table(self, n: int) -> dict[Fraction, int]:
        return {o.representative: self(o) for o in orbits_at_level(self.p, n)}


def trace_invariant(tower: FieldTower, orbit: FrobeniusOrbit, level: int | None = None) -> int:
    """Sum of the images of e(gamma) over the orbit; lies in F_p."""
    b = max(g.denominator for g in orbit.elements)
    if level is None:
        level = multiplicative_order(tower.p, b) if b > 1 else 1
    K = tower.level(level)
    total = K.zero()
    for g in orbit.elements:
        _, x = tower.root_of_unity(g, level)
        total = K.add(total, x)
    if any(total[1:]):
        raise AssertionError("orbit sum is not Frobenius-fixed")
    return total[0]


def digit_set(p: int, n: int, k: int) -> list[int]:
    """D_k: integers whose base-p digits (n of them) are k ones and n-k zeros."""
    from itertools import combinations

    return [sum(p**i for i in Y) for Y in combinations(range(n), k)]


def reconstruct_charpoly(tr: TraceInvariant, n: int) -> tuple[int, ...]:
    """P_n from trace data only: sigma_k is the sum of tr over the orbits making up D_k."""
    p = tr.p
    N = p**n - 1
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    for k in range(1, n + 1):
        seen: set[Fraction] = set()
        sigma = 0
        for a in digit_set(p, n, k):
            g = Fraction(a % N, N)
            if g in seen:
                continue
            orb = frobenius_orbit(g, p)
            seen.update(orb.elements)
            sigma += tr(orb, level=n)
        coeffs[n - k] = (-1) ** k * sigma % p
    return tuple(coeffs)


def charpoly_from_conjugates(tower: FieldTower, n: int) -> tuple[int, ...]:
    """Characteristic polynomial of xi as prod (T - xi^{p^i}) via elementary symmetric functions."""
    K = tower.level(n)
    conj = [K.gen]
    for _ in range(n - 1):
        conj.append(K.frobenius(conj[-1]))
    sigma = [K.one()] + [K.zero()] * n
    for c in conj:
        for k in range(n, 0, -1):
            sigma[k] = K.add(sigma[k], K.mul(sigma[k - 1], c))
    out = [0] * (n + 1)
    for k in range(n + 1):
        out[n - k] = ((-1) ** k * sigma[k][0]) % tower.p
    return tuple(out)


@lru_cache(maxsize=None)
def u_index(p: int, ell: int) -> int:
    """u(p, l): the index of the closure of p^Z in Z_l^x / Delta_l is l^u."""
    if p == ell:
        raise ValueError("p and l must be distinct primes")
    if ell == 2:
        return valuation(p * p - 1, 2) - 3
    return valuation(p ** (ell - 1) - 1, ell) - 1


__all__ = [
    "FieldTower",
    "FrobeniusOrbit",
    "MissingLevel",
    "TraceInvariant",
    "charpoly_from_conjugates",
    "digit_set",
    "frobenius_orbit",
    "orbits_at_level",
    "reconstruct_charpoly",
    "trace_invariant",
    "u_index",
]

