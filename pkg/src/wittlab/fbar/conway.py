"""Compatible sequences of primitive irreducible polynomials over F_p.

A sequence P_1, P_2, ... satisfies the Conway conditions when each P_n is
monic irreducible of degree n, the class of T in F_p[T]/(P_n) generates the
multiplicative group, and P_n divides P_m(T^d) for m | n, d = (p^n-1)/(p^m-1).

Candidates at level n are found inside a reference model of F_{p^n}: the
compatible roots are exactly the powers g^e of a fixed primitive g whose
exponent e reduces, modulo p^m - 1, to a root exponent of P_m for every
maximal divisor m.  Among the candidate Frobenius orbits the selection
strategy picks one minimal polynomial.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator, Sequence

from ..algebra import fpx
from ..algebra.ntheory import divisors, is_prime, lcm, prime_divisors
from ..algebra.rings import FiniteField

STRATEGIES = ("lexicographic", "first-found")

Poly = tuple[int, ...]


class SearchExhausted(RuntimeError):
    pass


def lex_key(f: Sequence[int]) -> tuple[int, ...]:
    """Order monic polynomials by (c_{n-1}, ..., c_0)."""
    return tuple(reversed(f[:-1]))


def is_primitive(f: Sequence[int], p: int) -> bool:
    """The class of T generates (F_p[T]/f)^x; f is assumed irreducible."""
    n = fpx.deg(f)
    N = p**n - 1
    if n == 1 and N == 1:
        return fpx.evaluate(f, 1, p) == 0
    for q in prime_divisors(N):
        if fpx.x_pow_mod(N // q, f, p) == [1]:
            return False
    return fpx.x_pow_mod(N, f, p) == [1]


def compatible(P_n: Sequence[int], P_m: Sequence[int], p: int) -> bool:
    """P_n divides P_m(T^d) with d = (p^n - 1)/(p^m - 1)."""
    n, m = fpx.deg(P_n), fpx.deg(P_m)
    d = (p**n - 1) // (p**m - 1)
    td = fpx.x_pow_mod(d, P_n, p)
    acc: list[int] = []
    power = [1]
    for c in P_m:
        if c:
            acc = fpx.add(acc, fpx.scale(power, c, p), p)
        power = fpx.mulmod(power, td, P_n, p)
    return not fpx.trim(acc, p)


@dataclass
class ConwaySequence:
    p: int
    polys: dict[int, Poly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        self.polys = {int(n): tuple(f) for n, f in self.polys.items()}

    @property
    def levels(self) -> list[int]:
        return sorted(self.polys)

    def __getitem__(self, n: int) -> Poly:
        return self.polys[n]

    def __contains__(self, n: int) -> bool:
        return n in self.polys

    def text(self, n: int) -> str:
        return fpx.to_text(list(self.polys[n]), "T")

    def to_json(self) -> dict:
        return {"p": self.p, "polys": {str(n): list(f) for n, f in sorted(self.polys.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "ConwaySequence":
        return cls(int(data["p"]), {int(k): tuple(v) for k, v in data["polys"].items()})

    @classmethod
    def generate(cls, p: int, n: int, strategy: str = "lexicographic") -> "ConwaySequence":
        return _generate_cached(p, n, strategy)

    @classmethod
    def for_levels(cls, p: int, levels: Iterable[int], strategy: str = "lexicographic") -> "ConwaySequence":
        """Only the levels dividing one of ``levels``; enough to embed those fields."""
        closure = sorted({m for n in levels for m in divisors(n)})
        return _levels_cached(p, tuple(closure), strategy)


@dataclass
class LevelReport:
    level: int
    irreducible: bool
    primitive: bool
    compatible: dict[int, bool]

    @property
    def ok(self) -> bool:
        return self.irreducible and self.primitive and all(self.compatible.values())


@dataclass
class ConwayReport:
    p: int
    levels: list[LevelReport]

    @property
    def ok(self) -> bool:
        return all(level.ok for level in self.levels)

    def lines(self) -> list[str]:
        out = []
        for r in self.levels:
            compat = ",".join(f"{m}:{'ok' if v else 'FAIL'}" for m, v in sorted(r.compatible.items()))
            out.append(
                f"n={r.level} irreducible={'ok' if r.irreducible else 'FAIL'} "
                f"primitive={'ok' if r.primitive else 'FAIL'} compatible=[{compat}]"
            )
        return out


def verify_conway(seq: ConwaySequence) -> ConwayReport:
    p = seq.p
    reports = []
    for n in seq.levels:
        f = list(seq[n])
        monic_ok = len(f) == n + 1 and f[-1] == 1
        irreducible = monic_ok and fpx.is_irreducible(f, p)
        primitive = irreducible and is_primitive(f, p)
        compat = {m: compatible(f, seq[m], p) for m in divisors(n) if m < n and m in seq}
        reports.append(LevelReport(n, irreducible, primitive, compat))
    return ConwayReport(p, reports)


def _irreducibles(p: int, n: int) -> Iterator[list[int]]:
    for tail in itertools.product(range(p), repeat=n):
        f = list(reversed(tail)) + [1]
        if fpx.is_irreducible(f, p):
            yield f


def _crt(a: int, m: int, b: int, n: int) -> int | None:
    g = gcd(m, n)
    if (b - a) % g:
        return None
    l = m // g * n
    k = ((b - a) // g * pow(m // g, -1, n // g)) % (n // g) if n // g > 1 else 0
    return (a + m * k) % l


def _conjugates(K: FiniteField, xi: tuple[int, ...]) -> list[tuple[int, ...]]:
    conj = [xi]
    while True:
        nxt = K.frobenius(conj[-1])
        if nxt == xi:
            return conj
        conj.append(nxt)


def _poly_from_roots(K: FiniteField, roots: Sequence[tuple[int, ...]]) -> Poly:
    poly = [K.one()]
    for c in roots:
        neg = K.neg(c)
        shifted = [K.zero()] + poly
        for i, coef in enumerate(poly):
            shifted[i] = K.add(shifted[i], K.mul(coef, neg))
        poly = shifted
    if any(any(c[1:]) for c in poly):
        raise AssertionError("minimal polynomial has coefficients outside F_p")
    return tuple(c[0] for c in poly)


def _candidate_roots(seq: ConwaySequence, n: int) -> tuple[FiniteField, list[list[tuple[int, ...]]]]:
    """Conjugate sets of the admissible roots, one per Frobenius orbit, in exponent order."""
    p = seq.p
    N = p**n - 1
    maximal = [n // q for q in prime_divisors(n)] if n > 1 else []
    missing = [m for m in divisors(n) if m < n and m not in seq]
    if missing:
        raise ValueError(f"levels {missing} must be present before level {n}")
    ref = next(_irreducibles(p, n))
    K = FiniteField(p, ref)
    g0 = next(x for x in K.elements() if any(x) and K.multiplicative_order(x) == N)
    residues: list[tuple[int, int]] = [(0, 1)]
    for m in maximal:
        Mm = p**m - 1
        h = K.pow(g0, N // Mm)
        Pm = seq[m]
        roots = []
        hj = K.one()
        for j in range(Mm):
            val = K.zero()
            for c in reversed(Pm):
                val = K.add(K.mul(val, hj), K.from_int(c))
            if not any(val):
                roots.append(j)
            hj = K.mul(hj, h)
        merged = []
        for s, L in residues:
            for r in roots:
                e = _crt(s, L, r, Mm)
                if e is not None:
                    merged.append((e, lcm(L, Mm)))
        residues = merged
    exps = sorted(
        {e + t * L for e, L in residues for t in range(N // L) if gcd(e + t * L, N) == 1} if N > 1 else {0}
    )
    seen: set[int] = set()
    out = []
    for e in exps:
        if e in seen:
            continue
        seen |= {(e * p**i) % N if N > 1 else 0 for i in range(n)}
        out.append(_conjugates(K, K.pow(g0, e)))
    return K, out


def candidates(seq: ConwaySequence, n: int) -> list[Poly]:
    """All valid P_n compatible with the existing levels, in exponent order."""
    K, roots = _candidate_roots(seq, n)
    return [_poly_from_roots(K, conj) for conj in roots]


def _select(seq: ConwaySequence, n: int, strategy: str) -> Poly:
    K, roots = _candidate_roots(seq, n)
    if not roots:
        raise SearchExhausted(f"no compatible primitive polynomial of degree {n} over F_{seq.p}")
    if strategy == "first-found":
        return _poly_from_roots(K, roots[0])
    # c_{n-1} = -trace decides most comparisons; expand only the survivors
    def top(conj: list[tuple[int, ...]]) -> int:
        total = K.zero()
        for c in conj:
            total = K.add(total, c)
        return (-total[0]) % seq.p

    best = min(top(c) for c in roots)
    return min((_poly_from_roots(K, c) for c in roots if top(c) == best), key=lex_key)


def extend_sequence(seq: ConwaySequence, up_to: int, strategy: str = "lexicographic") -> ConwaySequence:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    out = ConwaySequence(seq.p, dict(seq.polys))
    for n in range(1, up_to + 1):
        if n not in out:
            out.polys[n] = _select(out, n, strategy)
    return out


@lru_cache(maxsize=64)
def _generate_cached(p: int, n: int, strategy: str) -> ConwaySequence:
    if n <= 1:
        return extend_sequence(ConwaySequence(p), n, strategy)
    prev = _generate_cached(p, n - 1, strategy)
    return extend_sequence(prev, n, strategy)


@lru_cache(maxsize=64)
def _levels_cached(p: int, closure: tuple[int, ...], strategy: str) -> ConwaySequence:
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    out = ConwaySequence(p)
    for n in closure:
        out.polys[n] = _select(out, n, strategy)
    return out


def primitive_irreducibles(p: int, n: int) -> list[Poly]:
    """All primitive monic irreducible polynomials of degree n (exhaustive)."""
    return [tuple(f) for f in _irreducibles(p, n) if is_primitive(f, p)]


def factor_count_check(p: int, n: int) -> tuple[int, int]:
    """(number of irreducible factors of Phi_{p^n-1} mod p, phi(p^n-1)/n)."""
    from ..algebra.cyclo import cyclotomic_coeffs
    from ..algebra.ntheory import totient

    N = p**n - 1
    f = [c % p for c in cyclotomic_coeffs(N)]
    facs = fpx.factor(f, p)
    return sum(mult for _, mult in facs), totient(N) // n


__all__ = [
    "ConwaySequence",
    "ConwayReport",
    "LevelReport",
    "SearchExhausted",
    "candidates",
    "compatible",
    "extend_sequence",
    "is_primitive",
    "lex_key",
    "primitive_irreducibles",
    "verify_conway",
]
