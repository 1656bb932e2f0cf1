"""Bounded-precision p-adic numbers and the Iwasawa logarithm / exponential.

A :class:`PadicNumber` is ``p^val * unit`` with ``unit`` known modulo
``p^prec`` (relative precision).  Exact zero has ``val = inf``; a zero
that is only known to lie in ``p^N Z_p`` is stored as ``val = N``,
``unit = 0``, ``prec = 0``.  Every operation propagates precision
conservatively, so a result never claims more digits than its inputs
justify.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any

from .ntheory import valuation

INF = math.inf


class PrecisionError(ArithmeticError):
    pass


class DomainError(ArithmeticError):
    pass


def q_constants(p: int) -> tuple[int, int]:
    """Return ``(q, phi(q))``: ``(4, 2)`` for p = 2, else ``(p, p - 1)``."""
    return (4, 2) if p == 2 else (p, p - 1)


def v_q(p: int) -> int:
    return 2 if p == 2 else 1


class PadicNumber:
    __slots__ = ("p", "val", "unit", "prec")

    def __init__(self, p: int, val: int | float, unit: int, prec: int):
        self.p = p
        if val == INF:
            self.val, self.unit, self.prec = INF, 0, 0
            return
        if prec <= 0 or unit % p**prec == 0:
            # a zero known modulo p^(val+prec)
            self.val, self.unit, self.prec = int(val + max(prec, 0)), 0, 0
            return
        unit %= p**prec
        k = 0
        while unit % p == 0:
            unit //= p
            k += 1
        self.val = int(val) + k
        self.prec = prec - k
        self.unit = unit % p**self.prec

    # -- constructors ---------------------------------------------------
    @classmethod
    def exact_zero(cls, p: int) -> "PadicNumber":
        return cls(p, INF, 0, 0)

    @classmethod
    def big_o(cls, p: int, N: int) -> "PadicNumber":
        return cls(p, N, 0, 0)

    @classmethod
    def from_rational(cls, r: int | Fraction, p: int, prec: int) -> "PadicNumber":
        r = Fraction(r)
        if r == 0:
            return cls.exact_zero(p)
        num, den = r.numerator, r.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        mod = p**prec
        return cls(p, v, num * pow(den, -1, mod) % mod, prec)

    from_int = from_rational

    # -- structure ------------------------------------------------------
    def is_exact_zero(self) -> bool:
        return self.val == INF

    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def abs_prec(self) -> int | float:
        return self.val + self.prec if self.val != INF else INF

    def valuation(self) -> int | float:
        if self.unit == 0 and self.val != INF:
            raise PrecisionError(f"valuation undetermined: value is O({self.p}^{self.val})")
        return self.val

    def residue(self, N: int | None = None) -> int:
        """Integer representative in ``[0, p^N)``; requires ``val >= 0``."""
        N = self.abs_prec if N is None else N
        if N == INF:
            raise PrecisionError("exact value has no finite residue bound; pass N")
        if N > self.abs_prec:
            raise PrecisionError(f"requested {N} digits, only {self.abs_prec} known")
        if self.val == INF or self.unit == 0:
            return 0
        if self.val < 0:
            raise DomainError("value is not integral")
        return self.unit * self.p**self.val % self.p**N

    def with_prec(self, N: int) -> "PadicNumber":
        """Reduce to absolute precision ``N`` (never increases knowledge)."""
        if self.val == INF:
            return self
        N = min(N, self.abs_prec)
        return PadicNumber(self.p, self.val, self.unit, N - self.val)

    # -- arithmetic -----------------------------------------------------
    def _lift(self, other: Any) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError("p-adic numbers over different primes")
            return other
        if isinstance(other, (int, Fraction)):
            prec = self.prec if self.val != INF else 64
            prec = max(prec, 1) + (abs(int(self.val)) if self.val != INF else 0) + 8
            return PadicNumber.from_rational(other, self.p, prec)
        return NotImplemented

    def __add__(self, other: Any) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        if self.val == INF:
            return other
        if other.val == INF:
            return self
        N = min(self.abs_prec, other.abs_prec)
        v = min(self.val, other.val)
        p = self.p
        s = self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)
        return PadicNumber(p, v, s, N - v)

    __radd__ = __add__

    def __neg__(self) -> "PadicNumber":
        if self.val == INF or self.unit == 0:
            return self
        return PadicNumber(self.p, self.val, -self.unit, self.prec)

    def __sub__(self, other: Any) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Any) -> "PadicNumber":
        return (-self) + other

    def __mul__(self, other: Any) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.p
        if self.val == INF or other.val == INF:
            return PadicNumber.exact_zero(p)
        if self.unit == 0 or other.unit == 0:
            # O(p^a) * (p^b u) is O(p^(a+b)); the unknown factor bounds the result
            if self.unit == 0 and other.unit == 0:
                return PadicNumber.big_o(p, self.val + other.val)
            z, x = (self, other) if self.unit == 0 else (other, self)
            return PadicNumber.big_o(p, z.val + x.val)
        prec = min(self.prec, other.prec)
        return PadicNumber(p, self.val + other.val, self.unit * other.unit, prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.unit == 0:
            raise ZeroDivisionError("inverse of a p-adic zero")
        mod = self.p**self.prec
        return PadicNumber(self.p, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other: Any) -> "PadicNumber":
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "PadicNumber":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "PadicNumber":
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return PadicNumber.from_rational(1, self.p, self.prec if self.val != INF else 64)
        if self.val == INF:
            return self
        if self.unit == 0:
            return PadicNumber.big_o(self.p, self.val * k)
        mod = self.p**self.prec
        return PadicNumber(self.p, self.val * k, pow(self.unit, k, mod), self.prec)

    def agrees(self, other: Any, N: int | None = None) -> bool:
        """True when the difference vanishes to the jointly known (or given) precision."""
        diff = self - self._lift(other)
        if diff.val == INF:
            return True
        if N is not None:
            if N > diff.abs_prec:
                raise PrecisionError(f"cannot compare to {N} digits; only {diff.abs_prec} known")
            return diff.unit == 0 or diff.val >= N
        return diff.unit == 0

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, (PadicNumber, int, Fraction)):
            return NotImplemented
        return self.agrees(other)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if self.val == INF:
            return f"PadicNumber(p={self.p}, 0)"
        if self.unit == 0:
            return f"PadicNumber(p={self.p}, O({self.p}^{self.val}))"
        return f"PadicNumber(p={self.p}, {self.p}^{self.val}*{self.unit} + O({self.p}^{self.abs_prec}))"

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        digits = []
        u = self.unit
        for _ in range(self.prec):
            digits.append(str(u % self.p) if self.p <= 10 else f"{u % self.p},")
            u //= self.p
        return {
            "p": self.p,
            "val": "inf" if self.val == INF else self.val,
            "unit": "".join(digits).rstrip(","),
            "prec": self.prec,
        }

    @classmethod
    def from_json(cls, data: dict) -> "PadicNumber":
        p = int(data["p"])
        if data["val"] == "inf":
            return cls.exact_zero(p)
        raw = data["unit"]
        digits = [int(d) for d in (raw.split(",") if p > 10 else raw)] if raw else []
        unit = sum(d * p**i for i, d in enumerate(digits))
        return cls(p, int(data["val"]), unit, int(data["prec"]))


# ---------------------------------------------------------------------------
# Teichmueller / omega for Z_p


def teichmuller_int(a: int, p: int, K: int) -> int:
    """Teichmueller representative of ``a mod p`` in ``Z/p^K`` (fixed point of x -> x^p)."""
    mod = p**K
    x = a % mod
    if x % p == 0:
        return 0
    for _ in range(K + 1):
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y
    raise AssertionError("Teichmueller iteration did not stabilise")


def omega_int(r: int, p: int, K: int) -> int:
    """The phi(q)-th root of unity congruent to ``r`` mod q, as an integer mod p^K."""
    if r % p == 0:
        raise DomainError(f"{r} is not a {p}-adic unit")
    if p == 2:
        return 1 if r % 4 == 1 else (-1) % 2**K
    return teichmuller_int(r, p, K)


def _unit_residue(r: int | Fraction, p: int, K: int) -> int:
    r = Fraction(r)
    if r.numerator % p == 0 or r.denominator % p == 0:
        raise DomainError(f"{r} is not a {p}-adic unit")
    mod = p**K
    return r.numerator * pow(r.denominator, -1, mod) % mod


def omega_angle(r: int | Fraction | PadicNumber, p: int, K: int) -> tuple[PadicNumber, PadicNumber]:
    """Split a unit as ``r = omega(r) * <r>`` with ``<r> = 1 mod q``."""
    if isinstance(r, PadicNumber):
        if r.val != 0 or r.unit == 0:
            raise DomainError("omega_angle expects a p-adic unit")
        K = min(K, r.prec)
        u = r.unit % p**K
    else:
        u = _unit_residue(r, p, K)
    q, _ = q_constants(p)
    if K < v_q(p):
        raise PrecisionError("not enough digits to separate the Teichmueller part")
    mod = p**K
    w = omega_int(u, p, K)
    angle = u * pow(w, -1, mod) % mod
    assert angle % q == 1 % q
    return PadicNumber(p, 0, w, K), PadicNumber(p, 0, angle, K)


# ---------------------------------------------------------------------------
# log / exp


def _log_principal(y: int, s: int, p: int, K: int) -> int:
    """-sum (-y)^n / n modulo p^K for an integer ``y`` with v_p(y) >= s >= 1."""
    if y % p**K == 0:
        return 0
    n_max = K + K.bit_length() + 2
    E = max(valuation(n, p) for n in range(1, n_max + 1))
    mod = p ** (K + E)
    out = 0
    ypow = 1
    for n in range(1, n_max + 1):
        ypow = ypow * y % mod
        vn = valuation(n, p)
        if n * s - vn >= K:
            continue
        term = ypow // p**vn
        unit_n = n // p**vn
        term = term * pow(unit_n, -1, p**K) % p**K
        out += term if n % 2 else -term
    return out % p**K


def iwasawa_log(x: PadicNumber | int | Fraction, p: int | None = None, K: int | None = None) -> PadicNumber:
    """Iwasawa logarithm: log_p(p) = 0 and log of roots of unity vanishes."""
    if not isinstance(x, PadicNumber):
        if p is None or K is None:
            raise TypeError("pass p and K when x is rational")
        x = PadicNumber.from_rational(x, p, K)
    p = x.p
    if x.unit == 0:
        raise DomainError("log of zero")
    K = x.prec if K is None else min(K, x.prec)
    if K < v_q(p):
        raise PrecisionError("not enough digits to separate the Teichmueller part")
    u = x.unit % p**K
    w = omega_int(u, p, K)
    angle = u * pow(w, -1, p**K) % p**K
    y = (angle - 1) % p**K
    if y == 0:
        return PadicNumber.big_o(p, K)
    s = valuation(y, p)
    return PadicNumber(p, 0, _log_principal(y, s, p, K), K)


def padic_exp(x: PadicNumber, K: int | None = None) -> PadicNumber:
    """exp(x) for v_p(x) >= 1 (p odd) or >= 2 (p = 2)."""
    p = x.p
    if x.val == INF:
        return PadicNumber.from_rational(1, p, K or 64)
    need = v_q(p)
    if x.unit != 0 and x.val < need:
        raise DomainError(f"exp diverges: v_{p}(x) = {x.val} < {need}")
    if x.unit == 0 and x.val < need:
        raise PrecisionError("argument known too coarsely to test convergence")
    A = x.abs_prec if K is None else min(K, x.abs_prec)
    A = int(A)
    if x.unit == 0:
        return PadicNumber(p, 0, 1, A)
    s = x.val
    slope = s - Fraction(1, p - 1)
    n_max = int(A / slope) + 2
    E = _vp_factorial(n_max, p)
    mod = p ** (A + E)
    X = x.unit * p**s % mod
    out = 1
    xpow = 1
    fact = 1
    for n in range(1, n_max + 1):
        xpow = xpow * X % mod
        fact *= n
        vf = _vp_factorial(n, p)
        if n * s - vf >= A:
            continue
        term = xpow // p**vf
        unit_f = fact // p**vf
        out += term * pow(unit_f, -1, p**A)
    return PadicNumber(p, 0, out % p**A, A)


def _vp_factorial(n: int, p: int) -> int:
    total = 0
    while n:
        n //= p
        total += n
    return total


def angle_power(r: int | Fraction, exponent: PadicNumber | int | Fraction, p: int, K: int) -> PadicNumber:
    """<r>^s = exp(s * log_p r) for s in Z_p."""
    log_r = iwasawa_log(PadicNumber.from_rational(r, p, K))
    if not isinstance(exponent, PadicNumber):
        exponent = PadicNumber.from_rational(exponent, p, K)
    if exponent.val != INF and exponent.unit != 0 and exponent.val < 0:
        raise DomainError("exponent must lie in Z_p")
    arg = log_r * exponent
    if arg.val == INF:
        return PadicNumber.from_rational(1, p, K)
    return padic_exp(arg, K)


def i_p(r: int | Fraction, p: int, K: int) -> PadicNumber:
    """log_p(r) / log_p(1 + q) in Z_p."""
    q, _ = q_constants(p)
    extra = v_q(p)
    num = iwasawa_log(PadicNumber.from_rational(r, p, K + extra))
    den = iwasawa_log(PadicNumber.from_rational(1 + q, p, K + extra))
    if num.unit == 0:
        return PadicNumber.big_o(p, num.val - den.val)
    return num / den
