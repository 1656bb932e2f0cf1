"""Coefficient-ring adapters.

Witt vectors, power series and universal polynomials are written against a
tiny duck-typed protocol so that the same code runs over Z, Q, F_p, F_{p^d},
Z/p^K and symbolic polynomial rings.  Elements are plain Python values
(ints, Fractions, tuples, SparsePoly); the adapter carries the operations.

``torsion_free`` decides the Witt router: torsion-free rings use ghost
recursion with exact division, everything else evaluates universal
polynomials.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterable, Sequence

from . import fpx
from .ntheory import factorint
from .poly import SparsePoly


class InexactDivision(ArithmeticError):
    """Raised when ghost recursion tries to divide where the ring has torsion."""


class Ring:
    name = "ring"
    characteristic = 0
    torsion_free = True
    int_modulus: int | None = None

    def zero(self) -> Any:
        return self.from_int(0)

    def one(self) -> Any:
        return self.from_int(1)

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def from_rational(self, c: int | Fraction) -> Any:
        if isinstance(c, Fraction):
            if c.denominator == 1:
                return self.from_int(c.numerator)
            return self.div_int(self.from_int(c.numerator), c.denominator)
        return self.from_int(c)

    def add(self, a: Any, b: Any) -> Any:
        return a + b

    def sub(self, a: Any, b: Any) -> Any:
        return a - b

    def neg(self, a: Any) -> Any:
        return -a

    def mul(self, a: Any, b: Any) -> Any:
        return a * b

    def pow(self, a: Any, k: int) -> Any:
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def scale(self, n: int, a: Any) -> Any:
        return self.mul(self.from_int(n), a)

    def is_zero(self, a: Any) -> bool:
        return a == self.zero()

    def eq(self, a: Any, b: Any) -> bool:
        return self.is_zero(self.sub(a, b))

    def div_int(self, a: Any, n: int) -> Any:
        raise InexactDivision(f"{self.name} has no exact division by {n}")

    def to_str(self, a: Any) -> str:
        return str(a)

    def from_str(self, s: str) -> Any:
        raise NotImplementedError

    def random(self, rng: random.Random, size: int = 9) -> Any:
        return self.from_int(rng.randint(-size, size))

    def __eq__(self, other: Any) -> bool:
        return type(self) is type(other) and self.name == other.name

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.name))

    def __repr__(self) -> str:
        return f"<ring {self.name}>"


class IntegerRing(Ring):
    name = "Z"

    def from_int(self, n: int) -> int:
        return int(n)

    def pow(self, a: int, k: int) -> int:
        return a**k

    def is_zero(self, a: int) -> bool:
        return a == 0

    def div_int(self, a: int, n: int) -> int:
        q, r = divmod(a, n)
        if r:
            raise InexactDivision(f"{a} is not divisible by {n} in Z")
        return q

    def from_str(self, s: str) -> int:
        return int(s)


class RationalField(Ring):
    name = "Q"

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_rational(self, c: int | Fraction) -> Fraction:
        return Fraction(c)

    def pow(self, a: Fraction, k: int) -> Fraction:
        return a**k

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def div_int(self, a: Fraction, n: int) -> Fraction:
        return a / n

    def to_str(self, a: Fraction) -> str:
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def from_str(self, s: str) -> Fraction:
        return Fraction(s)

    def random(self, rng: random.Random, size: int = 9) -> Fraction:
        return Fraction(rng.randint(-size, size), rng.randint(1, 4))


class ModularRing(Ring):
    """Z/NZ with N = p^K; a prime field when K = 1."""

    torsion_free = False

    def __init__(self, p: int, K: int = 1):
        self.p = p
        self.K = K
        self.int_modulus = p**K
        self.characteristic = p**K
        self.name = f"F{p}" if K == 1 else f"Z/{p}^{K}"

    def from_int(self, n: int) -> int:
        return n % self.int_modulus

    def from_rational(self, c: int | Fraction) -> int:
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise InexactDivision(f"{c} has p in its denominator")
            return c.numerator * pow(c.denominator, -1, self.int_modulus) % self.int_modulus
        return c % self.int_modulus

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.int_modulus

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.int_modulus

    def neg(self, a: int) -> int:
        return (-a) % self.int_modulus

    def mul(self, a: int, b: int) -> int:
        return a * b % self.int_modulus

    def pow(self, a: int, k: int) -> int:
        return pow(a, k, self.int_modulus)

    def is_zero(self, a: int) -> bool:
        return a % self.int_modulus == 0

    def div_int(self, a: int, n: int) -> int:
        if n % self.p == 0:
            raise InexactDivision(f"{n} is not a unit in {self.name}")
        return a * pow(n, -1, self.int_modulus) % self.int_modulus

    def from_str(self, s: str) -> int:
        return int(s) % self.int_modulus

    def random(self, rng: random.Random, size: int = 0) -> int:
        return rng.randrange(self.int_modulus)


class PrimeField(ModularRing):
    def __init__(self, p: int):
        super().__init__(p, 1)

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)


class FiniteField(Ring):
    """F_p[T]/(f) for a monic irreducible ``f``; elements are coefficient tuples."""

    torsion_free = False

    def __init__(self, p: int, modulus: Sequence[int], name: str | None = None):
        f = fpx.monic(fpx.trim(modulus, p), p)
        if len(f) < 2:
            raise ValueError("modulus must have positive degree")
        self.p = p
        self.characteristic = p
        self.modulus = tuple(f)
        self.degree = len(f) - 1
        self.order = p**self.degree
        self.name = name or f"F{p}^{self.degree}[{fpx.to_text(f)}]"
        self._log_table: dict[tuple[int, ...], int] | None = None

    def _norm(self, f: Sequence[int]) -> tuple[int, ...]:
        f = list(f) + [0] * (self.degree - len(f))
        return tuple(f)

    def elem(self, coeffs: Iterable[int]) -> tuple[int, ...]:
        return self._norm(fpx.rem(fpx.trim(list(coeffs), self.p), self.modulus, self.p))

    def from_int(self, n: int) -> tuple[int, ...]:
        return self._norm([n % self.p])

    def from_rational(self, c: int | Fraction) -> tuple[int, ...]:
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise InexactDivision(f"{c} has p in its denominator")
            return self.from_int(c.numerator * pow(c.denominator, -1, self.p))
        return self.from_int(c)

    @cached_property
    def gen(self) -> tuple[int, ...]:
        return self.elem([0, 1])

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    @cached_property
    def _fold(self) -> tuple[tuple[int, ...], ...]:
        # T^k mod f for k = d .. 2d-2, used to fold a raw product back
        d, p = self.degree, self.p
        rows = []
        cur = [(-c) % p for c in self.modulus[:-1]]
        for _ in range(max(d - 1, 0)):
            rows.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(x - top * c) % p for x, c in zip(cur, self.modulus)]
        return tuple(rows)

    def mul(self, a, b):
        d, p = self.degree, self.p
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k, row in enumerate(self._fold):
            c = prod[d + k] % p
            if c:
                for j, v in enumerate(row):
                    out[j] += c * v
        return tuple(v % p for v in out)

    @cached_property
    def _frob_matrix(self) -> tuple[tuple[int, ...], ...]:
        # image of T^i under x -> x^p
        step = self.pow(self.gen, self.p)
        rows = [self.one()]
        for _ in range(1, self.degree):
            rows.append(self.mul(rows[-1], step))
        return tuple(rows)

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        result = self.one()
        base = tuple(a)
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        return self._norm(fpx.invmod(fpx.trim(a, self.p), self.modulus, self.p))

    def is_zero(self, a) -> bool:
        return not any(a)

    def eq(self, a, b) -> bool:
        return tuple(a) == tuple(b)

    def div_int(self, a, n: int):
        if n % self.p == 0:
            raise InexactDivision(f"{n} is zero in {self.name}")
        inv = pow(n, -1, self.p)
        return tuple(x * inv % self.p for x in a)

    def frobenius(self, a, k: int = 1):
        k %= self.degree
        rows, p = self._frob_matrix, self.p
        for _ in range(k):
            acc = [0] * self.degree
            for c, row in zip(a, rows):
                if c:
                    for j, v in enumerate(row):
                        acc[j] += c * v
            a = tuple(v % p for v in acc)
        return tuple(a)

    def is_prime_field_element(self, a) -> bool:
        return not any(a[1:])

    def to_str(self, a) -> str:
        return fpx.to_text(fpx.trim(a, self.p), "T")

    def from_str(self, s: str):
        poly = SparsePoly.parse(s, ("T",), self.p) if s.strip() != "0" else SparsePoly(("T",), {}, self.p)
        coeffs = [0] * (poly.total_degree() + 1 if poly else 1)
        for (k,), c in poly.terms.items():
            coeffs[k] = c
        return self.elem(coeffs)

    def random(self, rng: random.Random, size: int = 0):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def elements(self) -> Iterable[tuple[int, ...]]:
        from itertools import product

        for coeffs in product(range(self.p), repeat=self.degree):
            yield tuple(reversed(coeffs))

    def log(self, a) -> int:
        """Discrete logarithm to base T; requires T to be primitive."""
        if not any(a):
            raise ValueError("log of zero")
        N = self.order - 1
        if self._log_table is None and N <= 1 << 16:
            table = {}
            x = self.one()
            for k in range(N):
                table[x] = k
                x = self.mul(x, self.gen)
            if len(table) != N:
                raise ValueError("T is not primitive in this field")
            self._log_table = table
        if self._log_table is not None:
            return self._log_table[tuple(a)]
        return self._bsgs(tuple(a), N)

    def _bsgs(self, a, N: int) -> int:
        from math import isqrt

        m = isqrt(N) + 1
        baby = {}
        x = self.one()
        for j in range(m):
            baby.setdefault(x, j)
            x = self.mul(x, self.gen)
        giant = self.pow(self.inv(self.gen), m)
        y = a
        for i in range(m + 1):
            if y in baby:
                return (i * m + baby[y]) % N
            y = self.mul(y, giant)
        raise ValueError("discrete logarithm not found")

    def multiplicative_order(self, a) -> int:
        N = self.order - 1
        order = N
        for q, _ in factorint(N) if N > 1 else ():
            while order % q == 0 and self.pow(a, order // q) == self.one():
                order //= q
        return order

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash(("FiniteField", self.p, self.modulus))


class PolynomialRing(Ring):
    """Symbolic ring of SparsePoly over Z (torsion-free) or F_p."""

    def __init__(self, vars: Iterable[str] = (), modulus: int | None = None):
        self.vars = tuple(vars)
        self.modulus = modulus
        self.torsion_free = modulus is None
        self.characteristic = modulus or 0
        base = "Z" if modulus is None else f"F{modulus}"
        self.name = f"{base}[{','.join(self.vars)}]"

    def from_int(self, n: int) -> SparsePoly:
        return SparsePoly.constant(n, self.vars, self.modulus)

    def from_rational(self, c: int | Fraction) -> SparsePoly:
        return SparsePoly.constant(c, self.vars, self.modulus)

    def gen(self, name: str) -> SparsePoly:
        return SparsePoly.var(name, self.vars, self.modulus)

    def pow(self, a: SparsePoly, k: int) -> SparsePoly:
        return a**k

    def scale(self, n: int, a: SparsePoly) -> SparsePoly:
        return a.scale(n)

    def is_zero(self, a: SparsePoly) -> bool:
        return not a.terms

    def eq(self, a: SparsePoly, b: SparsePoly) -> bool:
        return a == b

    def div_int(self, a: SparsePoly, n: int) -> SparsePoly:
        try:
            return a.exact_div_int(n)
        except (ArithmeticError, ZeroDivisionError) as exc:
            raise InexactDivision(str(exc)) from exc

    def to_str(self, a: SparsePoly) -> str:
        return a.to_text()

    def from_str(self, s: str) -> SparsePoly:
        return SparsePoly.parse(s, self.vars, self.modulus)

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, PolynomialRing) and (self.vars, self.modulus) == (other.vars, other.modulus)

    def __hash__(self) -> int:
        return hash(("PolynomialRing", self.vars, self.modulus))


ZZ = IntegerRing()
QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def ring_from_tag(tag: str) -> Ring:
    """Parse the ring tags used in JSON and on the command line."""
    if tag == "Z":
        return ZZ
    if tag == "Q":
        return QQ
    if tag.startswith("Z/"):
        p, K = tag[2:].split("^")
        return ModularRing(int(p), int(K))
    if tag.startswith("F") and tag[1:].isdigit():
        return PrimeField(int(tag[1:]))
    if tag.startswith("F") and "[" in tag:
        head, rest = tag[1:].split("^", 1)
        poly_text = rest[rest.index("[") + 1 : -1]
        p = int(head)
        poly = SparsePoly.parse(poly_text, ("T",), p)
        coeffs = [0] * (poly.total_degree() + 1)
        for (k,), c in poly.terms.items():
            coeffs[k] = c
        return FiniteField(p, coeffs)
    raise ValueError(f"unknown ring tag {tag!r}")
