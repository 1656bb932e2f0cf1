"""The power-series model Lambda(A) = 1 + tA[[t]] of the big Witt ring.

Witt addition becomes multiplication of series and Witt multiplication
becomes the star product.  Series are truncated at degree T.
"""

from __future__ import annotations

import random
from typing import Any, Iterable, Sequence

from ..algebra.rings import Ring
from .truncation import TruncationSet
from .vectors import WittVector, witt_mul


class LambdaSeries:
    """1 + a_1 t + ... + a_T t^T (mod t^{T+1}) over ``ring``."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs: Sequence[Any]):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    @property
    def T(self) -> int:
        return len(self.coeffs)

    @classmethod
    def one(cls, ring: Ring, T: int) -> "LambdaSeries":
        return cls(ring, [ring.zero()] * T)

    @classmethod
    def geometric(cls, ring: Ring, T: int, a: Any = None, n: int = 1) -> "LambdaSeries":
        """(1 - a t^n)^{-1} truncated at degree T."""
        a = ring.one() if a is None else a
        coeffs = [ring.zero()] * T
        power = ring.one()
        for k in range(n, T + 1, n):
            power = ring.mul(power, a)
            coeffs[k - 1] = power
        return cls(ring, coeffs)

    @classmethod
    def random(cls, ring: Ring, T: int, rng: random.Random, size: int = 5) -> "LambdaSeries":
        return cls(ring, [ring.random(rng, size) for _ in range(T)])

    def full(self) -> list[Any]:
        return [self.ring.one(), *self.coeffs]

    def __getitem__(self, k: int) -> Any:
        return self.ring.one() if k == 0 else self.coeffs[k - 1]

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.T == other.T
            and all(self.ring.eq(a, b) for a, b in zip(self.coeffs, other.coeffs))
        )

    __hash__ = None  # type: ignore[assignment]

    def __mul__(self, other: "LambdaSeries") -> "LambdaSeries":
        _check(self, other)
        return LambdaSeries(self.ring, series_mul(self.full(), other.full(), self.ring, self.T)[1:])

    def truncate(self, T: int) -> "LambdaSeries":
        return LambdaSeries(self.ring, self.coeffs[:T])

    def inverse(self) -> "LambdaSeries":
        """Multiplicative inverse of the series (the Witt negative)."""
        ring = self.ring
        inv = [ring.one()]
        for n in range(1, self.T + 1):
            acc = ring.zero()
            for k in range(1, n + 1):
                acc = ring.add(acc, ring.mul(self[k], inv[n - k]))
            inv.append(ring.neg(acc))
        return LambdaSeries(ring, inv[1:])

    def star(self, other: "LambdaSeries") -> "LambdaSeries":
        return lambda_star(self, other)

    def ghosts(self) -> list[Any]:
        """w_1..w_T with t f'/f = sum w_n t^n."""
        ring = self.ring
        w: list[Any] = []
        for n in range(1, self.T + 1):
            acc = ring.scale(n, self[n])
            for k in range(1, n):
                acc = ring.sub(acc, ring.mul(w[k - 1], self[n - k]))
            w.append(acc)
        return w

    @classmethod
    def from_ghosts(cls, ring: Ring, ghosts: Sequence[Any]) -> "LambdaSeries":
        """Inverse of :meth:`ghosts`; needs exact division by n."""
        a = [ring.one()]
        for n in range(1, len(ghosts) + 1):
            acc = ghosts[n - 1]
            for k in range(1, n):
                acc = ring.add(acc, ring.mul(ghosts[k - 1], a[n - k]))
            a.append(ring.div_int(acc, n))
        return cls(ring, a[1:])

    def substitute_power(self, n: int, T: int | None = None) -> "LambdaSeries":
        """f(t^n) truncated at degree T (default: same T)."""
        T = self.T if T is None else T
        coeffs = [self.ring.zero()] * T
        for k in range(1, T // n + 1):
            if k <= self.T:
                coeffs[k * n - 1] = self[k]
        return LambdaSeries(self.ring, coeffs)

    def scale_variable(self, y: Any) -> "LambdaSeries":
        """f(y t)."""
        ring = self.ring
        out, power = [], ring.one()
        for a in self.coeffs:
            power = ring.mul(power, y)
            out.append(ring.mul(a, power))
        return LambdaSeries(ring, out)

    def root(self, n: int) -> "LambdaSeries":
        """The unique g in Lambda(A) with g^n = f; n must be a unit in A."""
        ring = self.ring
        g = [ring.one()]
        for k in range(1, self.T + 1):
            # coefficient of t^k in g^n with g_k still zero
            trial = series_pow(g + [ring.zero()], n, ring, k)
            g.append(ring.div_int(ring.sub(self[k], trial[k]), n))
        return LambdaSeries(ring, g[1:])

    def __repr__(self) -> str:
        terms = " + ".join(f"({self.ring.to_str(c)})t^{k}" for k, c in enumerate(self.coeffs, 1))
        return f"LambdaSeries[{self.ring.name}](1 + {terms})"

    def to_json(self) -> dict:
        return {"ring": self.ring.name, "T": self.T, "coeffs": [self.ring.to_str(c) for c in self.coeffs]}


def _check(f: LambdaSeries, g: LambdaSeries) -> None:
    if f.ring != g.ring:
        raise ValueError(f"ring mismatch: {f.ring.name} vs {g.ring.name}")
    if f.T != g.T:
        raise ValueError("truncation degrees differ")


def series_mul(a: Sequence[Any], b: Sequence[Any], ring: Ring, T: int) -> list[Any]:
    out = [ring.zero()] * (T + 1)
    for i, x in enumerate(a[: T + 1]):
        if ring.is_zero(x):
            continue
        for j in range(min(len(b), T + 1 - i)):
            y = b[j]
            if not ring.is_zero(y):
                out[i + j] = ring.add(out[i + j], ring.mul(x, y))
    return out


def series_pow(a: Sequence[Any], n: int, ring: Ring, T: int) -> list[Any]:
    result = [ring.one()] + [ring.zero()] * T
    base = list(a[: T + 1])
    while n:
        if n & 1:
            result = series_mul(result, base, ring, T)
        n >>= 1
        if n:
            base = series_mul(base, base, ring, T)
    return result


def lambda_from_witt(x: WittVector) -> LambdaSeries:
    """phi(x) = prod_n (1 - x_n t^n)^{-1}; needs an interval truncation."""
    if not x.trunc.is_interval():
        raise ValueError("the Lambda model needs an interval truncation {1..T}")
    ring, T = x.ring, x.trunc.max
    acc = [ring.one()] + [ring.zero()] * T
    for n in range(1, T + 1):
        if not ring.is_zero(x[n]):
            acc = series_mul(acc, LambdaSeries.geometric(ring, T, x[n], n).full(), ring, T)
    return LambdaSeries(ring, acc[1:])


def witt_from_lambda(f: LambdaSeries) -> WittVector:
    """Peel off the factors (1 - x_n t^n)^{-1} one degree at a time."""
    ring, T = f.ring, f.T
    acc = f.full()
    comps = {}
    for n in range(1, T + 1):
        xn = acc[n]
        comps[n] = xn
        if not ring.is_zero(xn):
            factor = [ring.one()] + [ring.zero()] * T
            factor[n] = ring.neg(xn)
            acc = series_mul(acc, factor, ring, T)
    return WittVector(TruncationSet.interval(T), ring, comps)


def lambda_star(f: LambdaSeries, g: LambdaSeries) -> LambdaSeries:
    """The star product: ghost components multiply termwise."""
    _check(f, g)
    ring = f.ring
    if ring.torsion_free:
        return LambdaSeries.from_ghosts(ring, [ring.mul(a, b) for a, b in zip(f.ghosts(), g.ghosts())])
    return lambda_from_witt(witt_mul(witt_from_lambda(f), witt_from_lambda(g)))


def from_coefficients(ring: Ring, values: Iterable[Any]) -> LambdaSeries:
    return LambdaSeries(ring, [ring.from_rational(v) if isinstance(v, int) else v for v in values])
