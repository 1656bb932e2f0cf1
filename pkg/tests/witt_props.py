"""Randomized Witt-vector identities shared by the unit and acceptance suites."""

from __future__ import annotations

import random
from math import gcd

from wittlab.witt.truncation import TruncationSet
from wittlab.witt.vectors import (
    WittVector,
    frobenius,
    ghost,
    verschiebung,
    witt_add,
    witt_mul,
    witt_scalar,
)

TOP = 12
FULL = TruncationSet.interval(TOP)
COPRIME_PAIRS = [(2, 3), (3, 2), (3, 4), (4, 3), (2, 5)]


def _rand(trunc, ring, rng):
    return WittVector.random(trunc, ring, rng, size=4)


def check_case(ring, rng: random.Random) -> list[str]:
    """Run every identity once on fresh random inputs; return the names that failed."""
    bad = []
    x, y = _rand(FULL, ring, rng), _rand(FULL, ring, rng)

    n = rng.choice([2, 3, 4, 5, 6])
    small = TruncationSet.interval(TOP // n)
    a, b = _rand(small, ring, rng), _rand(small, ring, rng)

    # ghost map is a ring homomorphism
    s, t = witt_add(x, y), witt_mul(x, y)
    for k in FULL:
        if not ring.eq(ghost(s, k), ring.add(ghost(x, k), ghost(y, k))):
            bad.append("ghost-add")
            break
        if not ring.eq(ghost(t, k), ring.mul(ghost(x, k), ghost(y, k))):
            bad.append("ghost-mul")
            break

    # F_n V_n = n
    if frobenius(verschiebung(a, n, FULL), n) != witt_scalar(a, n):
        bad.append("FnVn")

    # V_n(F_n(x) y) = x V_n(y)
    if verschiebung(witt_mul(frobenius(x, n), a), n, FULL) != witt_mul(x, verschiebung(a, n, FULL)):
        bad.append("projection")

    # V_m F_n = F_n V_m for coprime m, n
    n2, m2 = rng.choice(COPRIME_PAIRS)
    assert gcd(n2, m2) == 1
    lhs = verschiebung(frobenius(x, n2), m2)
    rhs = frobenius(verschiebung(x, m2), n2)
    if lhs != rhs:
        bad.append("VmFn")

    # V_n(x) V_n(y) = n V_n(xy)
    if witt_mul(verschiebung(a, n, FULL), verschiebung(b, n, FULL)) != witt_scalar(
        verschiebung(witt_mul(a, b), n, FULL), n
    ):
        bad.append("VnVn")

    # F_{nm} = F_n F_m and V_{nm} = V_n V_m
    n3, m3 = rng.choice([(2, 2), (2, 3), (3, 2), (2, 5), (3, 3), (2, 6)])
    if frobenius(x, n3 * m3) != frobenius(frobenius(x, m3), n3):
        bad.append("Fnm")
    c = _rand(TruncationSet.interval(TOP // (n3 * m3)), ring, rng)
    mid = TruncationSet.interval(TOP // n3)
    if verschiebung(c, n3 * m3, FULL) != verschiebung(verschiebung(c, m3, mid), n3, FULL):
        bad.append("Vnm")

    # F_p acts as the p-th power on components in characteristic p
    p = ring.characteristic
    if p:
        fx = frobenius(x, p)
        if any(not ring.eq(fx[k], ring.pow(x[k], p)) for k in fx.trunc):
            bad.append("frob-p-power")
    return bad
