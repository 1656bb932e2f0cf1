"""Seeded monomial pairs for the KMS checks and the p-adic cross-route."""

from __future__ import annotations

import random
from fractions import Fraction

from wittlab.algebra.padic import q_constants
from wittlab.bc.algebra import BCElement
from wittlab.bc.qz import QZElement

PRIMES = (3, 5, 7)
PAIRS_PER_POINT = 20


def _unit(rng, p, top=4):
    return rng.choice([n for n in range(1, top + 1) if n % p])


def _gamma(rng, p, top=8):
    b = rng.choice([b for b in range(1, top + 1) if b % p])
    return Fraction(rng.randrange(b), b)


def _coef(rng, p):
    x = QZElement()
    for _ in range(rng.randint(1, 2)):
        x = x + QZElement.e(_gamma(rng, p), rng.choice([1, 2, -1, 3]))
    return x


def monomial_pair(rng: random.Random, p: int) -> tuple[BCElement, BCElement]:
    """Half the pairs are matched so that y x lands on the identity monomial."""
    a, b = _unit(rng, p), _unit(rng, p)
    x = BCElement.monomial(a, _coef(rng, p), b)
    if rng.random() < 0.5:
        s, t = b, a
    else:
        s, t = _unit(rng, p), _unit(rng, p)
    y = BCElement.monomial(s, _coef(rng, p), t)
    return x, y


def points() -> list[tuple[int, int]]:
    out = []
    for p in PRIMES:
        _, phi = q_constants(p)
        out += [(p, phi), (p, 2 * phi)]
    return out


def corpus(seed: int = 2024) -> list[tuple[int, int, BCElement, BCElement]]:
    rng = random.Random(seed)
    return [(p, m, *monomial_pair(rng, p)) for p, m in points() for _ in range(PAIRS_PER_POINT)]


def gammas(entries) -> list[tuple[int, int, Fraction]]:
    """Distinct (p, m, gamma) appearing in the corpus coefficients."""
    seen = set()
    for p, m, x, y in entries:
        for elem in (x, y):
            for c in elem.terms.values():
                for g in c.support:
                    seen.add((p, m, g))
    return sorted(seen)
