"""Dense univariate polynomials over F_p.

Polynomials are little-endian coefficient lists with entries in ``0..p-1``
and no trailing zeros; the zero polynomial is ``[]``.  The functions are
plain module-level helpers so that finite-field code can call them with
the modulus threaded through explicitly.
"""

from __future__ import annotations

import random
from typing import Sequence

from .ntheory import factorint

Poly = list[int]


def trim(f: Sequence[int], p: int) -> Poly:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(f: Sequence[int]) -> int:
    return len(f) - 1


def add(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = (out[i] + c) % p
    return trim(out, p)


def sub(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    return add(f, [(-c) % p for c in g], p)


def scale(f: Sequence[int], c: int, p: int) -> Poly:
    return trim([a * c for a in f], p)


def mul(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def monic(f: Sequence[int], p: int) -> Poly:
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def divmod_(f: Sequence[int], g: Sequence[int], p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f)
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], trim(r, p)
    inv = pow(g[-1], -1, p)
    q = [0] * (len(r) - dg)
    for i in range(len(r) - 1, dg - 1, -1):
        c = r[i] % p
        if c:
            c = c * inv % p
            q[i - dg] = c
            for j in range(dg + 1):
                r[i - dg + j] -= c * g[j]
    return trim(q, p), trim(r[:dg], p)


def rem(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    return divmod_(f, g, p)[1]


def mulmod(f: Sequence[int], g: Sequence[int], m: Sequence[int], p: int) -> Poly:
    return rem(mul(f, g, p), m, p)


def powmod(f: Sequence[int], e: int, m: Sequence[int], p: int) -> Poly:
    result: Poly = [1] if len(m) > 1 else []
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = mulmod(result, base, m, p)
        e >>= 1
        if e:
            base = mulmod(base, base, m, p)
    return result


def gcd(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    a, b = trim(f, p), trim(g, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(f: Sequence[int], g: Sequence[int], p: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, s, t)`` with ``s*f + t*g = d`` and ``d`` monic."""
    r0, r1 = trim(f, p), trim(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def invmod(f: Sequence[int], m: Sequence[int], p: int) -> Poly:
    d, s, _ = xgcd(f, m, p)
    if d != [1]:
        raise ZeroDivisionError("element is not invertible modulo m")
    return rem(s, m, p)


def derivative(f: Sequence[int], p: int) -> Poly:
    return trim([i * c for i, c in enumerate(f)][1:], p)


def evaluate(f: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % p
    return acc


def compose(f: Sequence[int], g: Sequence[int], p: int, m: Sequence[int] | None = None) -> Poly:
    """``f(g)``, optionally reduced modulo ``m`` along the way."""
    acc: Poly = []
    for c in reversed(f):
        acc = mul(acc, g, p)
        if m is not None:
            acc = rem(acc, m, p)
        acc = add(acc, [c], p)
    return acc


def x_pow_mod(e: int, m: Sequence[int], p: int) -> Poly:
    return powmod([0, 1], e, m, p)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test: ``x^{p^n} = x`` mod f and gcd conditions at maximal divisors."""
    f = monic(trim(f, p), p)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for q, _ in factorint(n):
        h = _frob_power(x, n // q, f, p)
        if gcd(sub(h, x, p), f, p) != [1]:
            return False
    return _frob_power(x, n, f, p) == rem(x, f, p)


def _frob_power(g: Sequence[int], k: int, m: Sequence[int], p: int) -> Poly:
    out = rem(g, m, p)
    for _ in range(k):
        out = powmod(out, p, m, p)
    return out


def squarefree_decomposition(f: Sequence[int], p: int) -> list[tuple[Poly, int]]:
    """Monic square-free factors with multiplicities (Yun's algorithm adapted to char p)."""
    f = monic(trim(f, p), p)
    if deg(f) < 1:
        return []
    out: list[tuple[Poly, int]] = []
    df = derivative(f, p)
    if not df:
        root = [f[i] for i in range(0, len(f), p)]
        return [(g, e * p) for g, e in squarefree_decomposition(root, p)]
    c = gcd(f, df, p)
    w = divmod_(f, c, p)[0]
    i = 1
    while deg(w) > 0:
        y = gcd(w, c, p)
        z = divmod_(w, y, p)[0]
        if deg(z) > 0:
            out.append((monic(z, p), i))
        i += 1
        w = y
        c = divmod_(c, y, p)[0]
    if deg(c) > 0:
        root = [c[i] for i in range(0, len(c), p)]
        out.extend((g, e * p) for g, e in squarefree_decomposition(root, p))
    return out


def distinct_degree(f: Sequence[int], p: int) -> list[tuple[Poly, int]]:
    """Split a monic square-free ``f`` into products of equal-degree irreducibles."""
    out = []
    f = monic(f, p)
    h = [0, 1]
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(sub(h, [0, 1], p), f, p)
        if deg(g) > 0:
            out.append((g, d))
            f = divmod_(f, g, p)[0]
            h = rem(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def equal_degree(f: Sequence[int], d: int, p: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus splitting of a product of degree-``d`` irreducibles."""
    f = monic(f, p)
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^{2^{d-1}}
            t, acc = a, a
            for _ in range(d - 1):
                t = mulmod(t, t, f, p)
                acc = add(acc, t, p)
            g = gcd(acc, f, p)
        else:
            b = powmod(a, (p**d - 1) // 2, f, p)
            g = gcd(sub(b, [1], p), f, p)
        if 0 < deg(g) < n:
            return equal_degree(g, d, p, rng) + equal_degree(divmod_(f, g, p)[0], d, p, rng)


def factor(f: Sequence[int], p: int, seed: int = 0) -> list[tuple[Poly, int]]:
    """Factor over F_p into monic irreducibles with multiplicity.

    The leading coefficient is dropped; the splitting randomness comes from a
    ``random.Random(seed)`` so results are deterministic.
    """
    f = trim(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out: list[tuple[Poly, int]] = []
    for g, e in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for irr in equal_degree(h, d, p, rng):
                out.append((irr, e))
    out.sort(key=lambda t: (len(t[0]), t[0][::-1], t[1]))
    return out


def roots(f: Sequence[int], p: int) -> list[int]:
    """Roots in F_p via gcd with ``x^p - x``."""
    f = monic(trim(f, p), p)
    if deg(f) < 1:
        return []
    g = gcd(sub(x_pow_mod(p, f, p), [0, 1], p), f, p)
    found = [(-h[0]) % p for h in equal_degree(g, 1, p, random.Random(0))] if deg(g) > 0 else []
    return sorted(found)


def order_of_x_is_full(f: Sequence[int], p: int) -> bool:
    """True when the class of ``x`` generates ``(F_p[x]/f)^x`` (``f`` irreducible)."""
    n = deg(f)
    N = p**n - 1
    if n == 1:
        x = (-f[0]) % p
        if x == 0:
            return False
        return all(pow(x, N // q, p) != 1 for q, _ in factorint(N)) if N > 1 else True
    if x_pow_mod(N, f, p) != [1]:
        return False
    return all(x_pow_mod(N // q, f, p) != [1] for q, _ in factorint(N))


def to_text(f: Sequence[int], var: str = "T") -> str:
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono:
            body = mono if c == 1 else f"{c}*{mono}"
        else:
            body = str(c)
        parts.append(body)
    return " + ".join(parts) if parts else "0"
