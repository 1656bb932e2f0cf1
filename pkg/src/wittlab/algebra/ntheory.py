"""Small integer helpers shared across the package.

Integer factorization is delegated to :func:`sympy.factorint`; everything
else here is a thin convenience layer over it and :mod:`math`.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from sympy import factorint as _factorint


@lru_cache(maxsize=None)
def factorint(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of ``n >= 1`` as sorted ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError("factorint expects a positive integer")
    return tuple(sorted((int(q), int(e)) for q, e in _factorint(n).items()))


def prime_divisors(n: int) -> list[int]:
    return [q for q, _ in factorint(n)]


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    divs = [1]
    for q, e in factorint(n):
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return tuple(sorted(divs))


def totient(n: int) -> int:
    result = n
    for q, _ in factorint(n):
        result = result // q * (q - 1)
    return result


def is_prime(n: int) -> bool:
    return n >= 2 and factorint(n) == ((n, 1),)


def valuation(n: int, p: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def split_prime_part(n: int, p: int) -> tuple[int, int]:
    """Write ``n = p**k * m`` with ``p`` not dividing ``m``; return ``(k, m)``."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in ``(Z/nZ)^x``; the order modulo 1 is 1."""
    if n == 1:
        return 1
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    order = totient(n)
    for q, _ in factorint(order):
        while order % q == 0 and pow(a, order // q, n) == 1:
            order //= q
    return order


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out
