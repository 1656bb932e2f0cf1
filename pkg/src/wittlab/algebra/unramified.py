"""Truncated unramified extensions Z_{p^d} / p^K.

The modulus is the Teichmueller-normalized Hensel lift of an irreducible
``g`` over F_p: its roots are the (p^d - 1)-th roots of unity lifting the
roots of ``g``.  With that choice the class ``theta`` of ``x`` is itself a
Teichmueller representative and Frobenius acts by ``theta -> theta^p``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Any, Iterable, Sequence

from . import fpx
from .ntheory import valuation
from .padic import INF


def _mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], N: int) -> list[int]:
    """Product in (Z/N)[x]/(modulus) for a monic modulus; inputs have length d."""
    d = len(modulus) - 1
    prod = [0] * (2 * d - 1 if d else 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k] % N
        if c:
            for j in range(d):
                prod[k - d + j] -= c * modulus[j]
        prod[k] = 0
    return [c % N for c in prod[:d]] + [0] * (d - len(prod[:d]))


def _powmod(a: Sequence[int], e: int, modulus: Sequence[int], N: int) -> list[int]:
    d = len(modulus) - 1
    result = [1 % N] + [0] * (d - 1)
    base = list(a)
    while e:
        if e & 1:
            result = _mulmod(result, base, modulus, N)
        e >>= 1
        if e:
            base = _mulmod(base, base, modulus, N)
    return result


def hensel_lift_modulus(g: Sequence[int], p: int, K: int) -> list[int]:
    """Monic lift of the irreducible ``g`` over F_p whose roots are roots of unity."""
    g = fpx.monic(fpx.trim(g, p), p)
    d = len(g) - 1
    if d < 1:
        raise ValueError("modulus must have positive degree")
    if K == 1:
        return list(g)
    N = p**K
    gl = list(g)
    if d == 1:
        root = (-g[0]) % p
        tau = _teich_scalar(root, p, K)
        return [(-tau) % N, 1]
    x = [0, 1] + [0] * (d - 2)
    y = x
    for _ in range(K + 1):
        z = _powmod(y, p**d, gl, N)
        if z == y:
            break
        y = z
    else:
        raise AssertionError("Frobenius root lift did not converge")
    conj = [y]
    for _ in range(d - 1):
        conj.append(_powmod(conj[-1], p, gl, N))
    # expand prod (X - c_i) with coefficients in (Z/N)[x]/(g)
    zero = [0] * d
    one = [1] + [0] * (d - 1)
    poly: list[list[int]] = [one]
    for c in conj:
        neg_c = [(-v) % N for v in c]
        nxt = [zero] * (len(poly) + 1)
        for k, coef in enumerate(poly):
            nxt[k + 1] = [(u + v) % N for u, v in zip(nxt[k + 1], coef)]
            prod = _mulmod(coef, neg_c, gl, N)
            nxt[k] = [(u + v) % N for u, v in zip(nxt[k], prod)]
        poly = nxt
    out = []
    for coef in poly:
        if any(coef[1:]):
            raise AssertionError("lifted modulus has non-constant coefficients")
        out.append(coef[0] % N)
    return out


def _teich_scalar(a: int, p: int, K: int) -> int:
    from .padic import teichmuller_int

    return teichmuller_int(a, p, K)


class UnramifiedRing:
    """Context ``(p, d, K)`` with a fixed Teichmueller-normalized modulus."""

    def __init__(self, p: int, residue_modulus: Sequence[int], K: int):
        self.p = p
        self.K = K
        self.N = p**K
        self.residue_modulus = tuple(fpx.monic(fpx.trim(residue_modulus, p), p))
        self.d = len(self.residue_modulus) - 1
        self.modulus = tuple(hensel_lift_modulus(self.residue_modulus, p, K))

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, UnramifiedRing) and (self.p, self.K, self.modulus) == (
            other.p,
            other.K,
            other.modulus,
        )

    def __hash__(self) -> int:
        return hash((self.p, self.K, self.modulus))

    def __repr__(self) -> str:
        return f"UnramifiedRing(p={self.p}, d={self.d}, K={self.K})"

    def elem(self, coords: Iterable[int]) -> "UnramifiedElement":
        c = [int(v) % self.N for v in coords]
        if len(c) > self.d:
            c = _reduce_long(c, self.modulus, self.N)
        return UnramifiedElement(self, tuple(c + [0] * (self.d - len(c))))

    def scalar(self, n: int) -> "UnramifiedElement":
        return self.elem([n])

    def zero(self) -> "UnramifiedElement":
        return self.scalar(0)

    def one(self) -> "UnramifiedElement":
        return self.scalar(1)

    @cached_property
    def theta(self) -> "UnramifiedElement":
        """The class of x: a primitive (p^d - 1)-th root of unity when the residue modulus is primitive."""
        if self.d == 1:
            return self.scalar(-self.modulus[0])
        return self.elem([0, 1])

    @cached_property
    def _frob_images(self) -> tuple[tuple[int, ...], ...]:
        t = self.theta.coords
        step = _powmod(list(t), self.p, list(self.modulus), self.N) if self.d > 1 else t
        rows = [tuple([1 % self.N] + [0] * (self.d - 1))]
        for _ in range(1, self.d):
            rows.append(tuple(_mulmod(rows[-1], step, self.modulus, self.N)))
        return tuple(rows)

    def teichmuller(self, residue: Sequence[int]) -> "UnramifiedElement":
        """Teichmueller lift of a residue given in the basis of ``residue_modulus``."""
        x = self.elem(residue)
        if all(c % self.p == 0 for c in x.coords):
            return self.zero()
        e = self.p**self.d
        for _ in range(self.K + 1):
            y = x ** e
            if y == x:
                return x
            x = y
        raise AssertionError("Teichmueller iteration did not stabilise")


def _reduce_long(c: list[int], modulus: Sequence[int], N: int) -> list[int]:
    d = len(modulus) - 1
    c = list(c)
    for k in range(len(c) - 1, d - 1, -1):
        t = c[k] % N
        if t:
            for j in range(d):
                c[k - d + j] -= t * modulus[j]
        c[k] = 0
    return [v % N for v in c[:d]]


class UnramifiedElement:
    __slots__ = ("ring", "coords")

    def __init__(self, ring: UnramifiedRing, coords: tuple[int, ...]):
        self.ring = ring
        self.coords = coords

    def _other(self, other: Any) -> "UnramifiedElement":
        if isinstance(other, UnramifiedElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("elements of different unramified contexts")
            return other
        if isinstance(other, int):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other: Any) -> "UnramifiedElement":
        other = self._other(other)
        if other is NotImplemented:
            return other
        N = self.ring.N
        return UnramifiedElement(self.ring, tuple((a + b) % N for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> "UnramifiedElement":
        N = self.ring.N
        return UnramifiedElement(self.ring, tuple((-a) % N for a in self.coords))

    def __sub__(self, other: Any) -> "UnramifiedElement":
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Any) -> "UnramifiedElement":
        return (-self) + other

    def __mul__(self, other: Any) -> "UnramifiedElement":
        if isinstance(other, int):
            N = self.ring.N
            return UnramifiedElement(self.ring, tuple(a * other % N for a in self.coords))
        other = self._other(other)
        if other is NotImplemented:
            return other
        r = self.ring
        return UnramifiedElement(r, tuple(_mulmod(self.coords, other.coords, r.modulus, r.N)))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UnramifiedElement":
        if e < 0:
            return self.inverse() ** (-e)
        r = self.ring
        return UnramifiedElement(r, tuple(_powmod(self.coords, e, r.modulus, r.N)))

    def inverse(self) -> "UnramifiedElement":
        """Inverse of a unit: invert mod p in F_{p^d}, then Newton-lift."""
        r = self.ring
        p = r.p
        res = fpx.trim([c % p for c in self.coords], p)
        if not res:
            raise ZeroDivisionError("not a unit in the unramified ring")
        inv0 = fpx.invmod(res, list(r.residue_modulus), p)
        y = r.elem(inv0)
        for _ in range(r.K.bit_length() + 1):
            y = y * (2 - self * y)
        assert self * y == r.one()
        return y

    def frobenius(self, k: int = 1) -> "UnramifiedElement":
        r = self.ring
        out = self
        k %= r.d
        for _ in range(k):
            images = r._frob_images
            acc = [0] * r.d
            for i, c in enumerate(out.coords):
                if c:
                    for j, v in enumerate(images[i]):
                        acc[j] += c * v
            out = UnramifiedElement(r, tuple(v % r.N for v in acc))
        return out

    def frobenius_inverse(self, k: int = 1) -> "UnramifiedElement":
        return self.frobenius(-k)

    def valuation(self) -> int | float:
        vals = [valuation(c, self.ring.p) for c in self.coords if c % self.ring.N]
        return min(vals) if vals else INF

    def residue(self) -> tuple[int, ...]:
        return tuple(c % self.ring.p for c in self.coords)

    def is_scalar(self) -> bool:
        return not any(self.coords[1:])

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, int):
            other = self.ring.scalar(other)
        if not isinstance(other, UnramifiedElement):
            return NotImplemented
        return self.ring == other.ring and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.ring, self.coords))

    def __repr__(self) -> str:
        return f"UnramifiedElement({list(self.coords)} mod {self.ring.p}^{self.ring.K})"

    def to_json(self) -> dict:
        r = self.ring
        return {
            "p": r.p,
            "d": r.d,
            "prec": r.K,
            "modulus": list(r.modulus),
            "coords": list(self.coords),
        }

    @classmethod
    def from_json(cls, data: dict) -> "UnramifiedElement":
        p, K = int(data["p"]), int(data["prec"])
        residue = [c % p for c in data["modulus"]]
        ring = UnramifiedRing(p, residue, K)
        if tuple(data["modulus"]) != ring.modulus:
            raise ValueError("serialized modulus is not the normalized lift of its residue")
        return ring.elem(data["coords"])


def teichmuller(residue: Sequence[int], ring: UnramifiedRing) -> UnramifiedElement:
    return ring.teichmuller(residue)
