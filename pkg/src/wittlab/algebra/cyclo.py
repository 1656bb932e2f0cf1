"""Cyclotomic polynomials and exact arithmetic in Q(zeta_b) = Q[x]/(Phi_b).

Elements of different conductors interoperate: both operands are lifted to
the lcm conductor through ``zeta_b -> zeta_L^(L/b)`` before combining.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

from . import qx
from .ntheory import divisors, lcm, totient
from .poly import SparsePoly


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, little-endian."""
    if n < 1:
        raise ValueError("cyclotomic polynomials are indexed by n >= 1")
    num = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in divisors(n):
        if d < n:
            num, r = qx.divmod_(num, cyclotomic_coeffs(d))
            assert not r
    return tuple(int(c) for c in num)


def cyclotomic_poly(n: int, var: str = "x") -> SparsePoly:
    return SparsePoly((var,), {(i,): c for i, c in enumerate(cyclotomic_coeffs(n)) if c})


@lru_cache(maxsize=None)
def _zeta_powers(b: int) -> tuple[tuple[Fraction, ...], ...]:
    """Coordinates of zeta_b^k for k = 0..b-1 in the power basis."""
    phi = cyclotomic_coeffs(b)
    d = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * d
    cur[0] = Fraction(1)
    for _ in range(b):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic modulus
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


class CycloElement:
    __slots__ = ("conductor", "coords")

    def __init__(self, conductor: int, coords: Sequence):
        d = totient(conductor)
        coords = [Fraction(c) for c in coords]
        if len(coords) > d:
            coords = qx.rem(coords, cyclotomic_coeffs(conductor))
        coords = coords + [Fraction(0)] * (d - len(coords))
        self.conductor = conductor
        self.coords = tuple(coords)

    # -- constructors ---------------------------------------------------
    @classmethod
    def rational(cls, c, conductor: int = 1) -> "CycloElement":
        return cls(conductor, [c])

    @classmethod
    def zeta(cls, b: int, k: int = 1) -> "CycloElement":
        """zeta_b^k with zeta_b = e(1/b)."""
        return cls._raw(b, _zeta_powers(b)[k % b])

    @classmethod
    def e(cls, gamma: Fraction) -> "CycloElement":
        """The root of unity zeta_gamma for gamma in Q/Z."""
        gamma = Fraction(gamma) % 1
        return cls.zeta(gamma.denominator, gamma.numerator)

    @classmethod
    def _raw(cls, b: int, coords: tuple) -> "CycloElement":
        obj = cls.__new__(cls)
        obj.conductor = b
        obj.coords = coords
        return obj

    # -- field structure ------------------------------------------------
    def lift(self, L: int) -> "CycloElement":
        if L == self.conductor:
            return self
        if L % self.conductor:
            raise ValueError(f"conductor {self.conductor} does not divide {L}")
        step = L // self.conductor
        table = _zeta_powers(L)
        d = totient(L)
        out = [Fraction(0)] * d
        for i, c in enumerate(self.coords):
            if c:
                row = table[(i * step) % L]
                for j in range(d):
                    if row[j]:
                        out[j] += c * row[j]
        return CycloElement._raw(L, tuple(out))

    def _pair(self, other: Any) -> tuple["CycloElement", "CycloElement"]:
        if not isinstance(other, CycloElement):
            other = CycloElement.rational(other, self.conductor)
        if other.conductor == self.conductor:
            return self, other
        L = lcm(self.conductor, other.conductor)
        return self.lift(L), other.lift(L)

    def __add__(self, other: Any) -> "CycloElement":
        if not isinstance(other, (CycloElement, int, Fraction)):
            return NotImplemented
        a, b = self._pair(other)
        return CycloElement._raw(a.conductor, tuple(x + y for x, y in zip(a.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElement":
        return CycloElement._raw(self.conductor, tuple(-c for c in self.coords))

    def __sub__(self, other: Any) -> "CycloElement":
        if not isinstance(other, (CycloElement, int, Fraction)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "CycloElement":
        return (-self) + other

    def __mul__(self, other: Any) -> "CycloElement":
        if isinstance(other, (int, Fraction)):
            return CycloElement._raw(self.conductor, tuple(c * other for c in self.coords))
        if not isinstance(other, CycloElement):
            return NotImplemented
        a, b = self._pair(other)
        L = a.conductor
        d = len(a.coords)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] += x * y
        return CycloElement(L, prod)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "CycloElement":
        if isinstance(other, (int, Fraction)):
            return CycloElement._raw(self.conductor, tuple(c / other for c in self.coords))
        if isinstance(other, CycloElement):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k: int) -> "CycloElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = CycloElement.rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self) -> "CycloElement":
        phi = [Fraction(c) for c in cyclotomic_coeffs(self.conductor)]
        # extended Euclid over Q
        r0, r1 = phi, qx.trim(self.coords)
        s0, s1 = [], [Fraction(1)]
        if not r1:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        while len(r1) > 1:
            q, r = qx.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, qx.sub(s0, qx.mul(q, s1))
        if not r1:
            raise ZeroDivisionError("element is a zero divisor")
        return CycloElement(self.conductor, qx.scale(s1, 1 / r1[0]))

    def galois(self, k: int) -> "CycloElement":
        """Apply the automorphism zeta_b -> zeta_b^k (k prime to b)."""
        b = self.conductor
        table = _zeta_powers(b)
        out = [Fraction(0)] * len(self.coords)
        for i, c in enumerate(self.coords):
            if c:
                row = table[(i * k) % b]
                for j, v in enumerate(row):
                    if v:
                        out[j] += c * v
        return CycloElement._raw(b, tuple(out))

    def minimize(self) -> "CycloElement":
        """Re-express in the smallest conductor containing the element."""
        for c in divisors(self.conductor)[:-1]:
            cand = self._descend(c, totient(c))
            if cand is not None:
                return cand
        return self

    def _descend(self, c: int, d: int) -> "CycloElement | None":
        # the power basis of Q(zeta_c) spans a subspace of Q(zeta_b); solve exactly
        basis = [CycloElement.zeta(c, i).lift(self.conductor).coords for i in range(d)]
        sol = _solve(basis, self.coords)
        if sol is None:
            return None
        return CycloElement(c, sol)

    # -- predicates -----------------------------------------------------
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coords[0]

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CycloElement):
            return NotImplemented
        a, b = self._pair(other)
        return a.coords == b.coords

    def __hash__(self) -> int:
        m = self.minimize()
        return hash((m.conductor, m.coords))

    def __repr__(self) -> str:
        return f"CycloElement({self.conductor}, {self.to_text()})"

    def to_text(self, var: str | None = None) -> str:
        var = var or f"z{self.conductor}"
        return SparsePoly((var,), {(i,): c for i, c in enumerate(self.coords) if c}).to_text()

    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coords": [_fmt(c) for c in self.coords]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloElement":
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coords"]])


def _fmt(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _solve(basis: list[tuple[Fraction, ...]], target: Iterable[Fraction]) -> list[Fraction] | None:
    """Solve sum_i x_i basis[i] = target exactly; None when inconsistent."""
    rows = len(basis[0])
    cols = len(basis)
    # augmented matrix: rows are coordinates
    mat = [[basis[j][i] for j in range(cols)] + [t] for i, t in enumerate(target)]
    piv_cols = []
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        piv_cols.append(col)
        r += 1
    if any(mat[i][cols] != 0 for i in range(r, rows)):
        return None
    sol = [Fraction(0)] * cols
    for i, col in enumerate(piv_cols):
        sol[col] = mat[i][cols]
    return sol


def cyclo_sum(values: Iterable[CycloElement | int | Fraction]) -> CycloElement:
    total = CycloElement.rational(0)
    for v in values:
        total = total + v
    return total
