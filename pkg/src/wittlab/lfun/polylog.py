"""The rational functions l_{-n}(z) = (z d/dz)^n (z / (1 - z)) over cyclotomic fields."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable, Sequence

from ..algebra.cyclo import CycloElement

Poly = list[CycloElement]


def _c(x: Any) -> CycloElement:
    return x if isinstance(x, CycloElement) else CycloElement.rational(x)


def _trim(f: Iterable[Any]) -> Poly:
    out = [_c(c) for c in f]
    while out and not out[-1]:
        out.pop()
    return out


def _add(f: Sequence[CycloElement], g: Sequence[CycloElement]) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return _trim(out)


def _scale(f: Sequence[CycloElement], c: Any) -> Poly:
    return _trim(a * c for a in f)


def _mul(f: Sequence[CycloElement], g: Sequence[CycloElement]) -> Poly:
    if not f or not g:
        return []
    out = [CycloElement.rational(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = out[i + j] + a * b
    return _trim(out)


def _divmod(f: Sequence[CycloElement], g: Sequence[CycloElement]) -> tuple[Poly, Poly]:
    g = _trim(g)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = _trim(f)
    inv = g[-1].inverse()
    q = [CycloElement.rational(0)] * max(len(r) - len(g) + 1, 0)
    while len(r) >= len(g):
        c = r[-1] * inv
        k = len(r) - len(g)
        q[k] = c
        r = _add(r, [CycloElement.rational(0)] * k + _scale(g, -c))
    return _trim(q), r


def _gcd(f: Sequence[CycloElement], g: Sequence[CycloElement]) -> Poly:
    a, b = _trim(f), _trim(g)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _scale(a, a[-1].inverse()) if a else a


def _derivative(f: Sequence[CycloElement]) -> Poly:
    return _trim(c * i for i, c in enumerate(f) if i)


def _eval(f: Sequence[CycloElement], x: Any) -> CycloElement:
    acc = CycloElement.rational(0)
    for c in reversed(f):
        acc = acc * x + c
    return acc


class RationalFunction:
    """num/den in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable[Any], den: Iterable[Any] = (1,), reduce: bool = True):
        n, d = _trim(num), _trim(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if reduce and n:
            g = _gcd(n, d)
            if len(g) > 1:
                n, d = _divmod(n, g)[0], _divmod(d, g)[0]
        lead = d[-1].inverse()
        self.num = _scale(n, lead)
        self.den = _scale(d, lead)

    @classmethod
    def z(cls) -> "RationalFunction":
        return cls([0, 1])

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            _add(_mul(self.num, other.den), _mul(other.num, self.den)), _mul(self.den, other.den)
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(_scale(self.num, -1), self.den, reduce=False)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: Any) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return RationalFunction(_mul(self.num, other.num), _mul(self.den, other.den))
        return RationalFunction(_scale(self.num, other), self.den)

    __rmul__ = __mul__

    def theta(self) -> "RationalFunction":
        """z d/dz."""
        dn = _add(_mul(_derivative(self.num), self.den), _scale(_mul(self.num, _derivative(self.den)), -1))
        return RationalFunction([CycloElement.rational(0)] + dn, _mul(self.den, self.den))

    def rescale(self, c: Any) -> "RationalFunction":
        """f(c z)."""
        c = _c(c)

        def sub(f: Poly) -> Poly:
            out, pw = [], CycloElement.rational(1)
            for a in f:
                out.append(a * pw)
                pw = pw * c
            return out

        return RationalFunction(sub(self.num), sub(self.den))

    def compose_power(self, g: int) -> "RationalFunction":
        """f(z^g)."""

        def sub(f: Poly) -> Poly:
            out = [CycloElement.rational(0)] * ((len(f) - 1) * g + 1)
            for i, a in enumerate(f):
                out[i * g] = a
            return out

        return RationalFunction(sub(self.num), sub(self.den), reduce=False)

    def __call__(self, x: Any) -> CycloElement:
        d = _eval(self.den, x)
        if not d:
            raise ZeroDivisionError("pole")
        return _eval(self.num, x) / d

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        # cross-multiplication is exact and independent of normalization
        return not _add(_mul(self.num, other.den), _scale(_mul(other.num, self.den), -1))

    def is_rational_coefficients(self) -> bool:
        return all(c.is_rational() for c in self.num + self.den)

    def _text(self, f: Poly, var: str) -> str:
        from ..algebra.poly import SparsePoly

        if all(c.is_rational() for c in f):
            return SparsePoly((var,), {(i,): c.to_rational() for i, c in enumerate(f) if c}).to_text()
        terms = [f"({c.to_text()})*{var}^{i}" for i, c in enumerate(f) if c]
        return " + ".join(terms) or "0"

    def to_text(self, var: str = "z") -> str:
        return f"({self._text(self.num, var)})/({self._text(self.den, var)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_text()})"

    def to_json(self) -> dict:
        return {
            "num": [c.to_json() for c in self.num],
            "den": [c.to_json() for c in self.den],
        }


_POLYLOG: list[RationalFunction] = []


def polylog_neg(n: int) -> RationalFunction:
    """l_{-n}(z); l_0 = z/(1 - z)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if not _POLYLOG:
        _POLYLOG.append(RationalFunction([0, 1], [1, -1]))
    while len(_POLYLOG) <= n:
        _POLYLOG.append(_POLYLOG[-1].theta())
    return _POLYLOG[n]


def division_relation_check(n: int, g: int, sample_points: Iterable[Any] = ()) -> bool:
    """(1/g) sum_j l_{1-n}(zeta_{j/g} x) = g^{n-1} l_{1-n}(x^g), symbolically and at sample points."""
    if n < 1 or g < 1:
        raise ValueError("need n >= 1 and g >= 1")
    ell = polylog_neg(n - 1)
    total = RationalFunction([0])
    for j in range(g):
        total = total + ell.rescale(CycloElement.e(Fraction(j, g)))
    lhs = total * Fraction(1, g)
    rhs = ell.compose_power(g) * (g ** (n - 1))
    if lhs != rhs:
        return False
    for x in sample_points:
        x = _c(x)
        if not (x**g - 1):
            continue
        if lhs(x) != rhs(x):
            return False
    return True
