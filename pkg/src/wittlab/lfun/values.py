"""Cyclotomic sums Y_m, the functional values Z(gamma, beta) and their p-adic evaluation.

Exact values at beta = 1 - m (m a positive multiple of phi(q)) are kept in
Q(zeta_b) with rho deferred.  A FunctionalValue carries either that exact
number or a p-adic numeral p^shift * U with U in Z_{p^d}/p^K.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Any, Callable, Iterable, Mapping

from ..algebra.cyclo import CycloElement, _zeta_powers
from ..algebra.ntheory import totient, valuation
from ..algebra.padic import (
    INF,
    DomainError,
    PadicNumber,
    PrecisionError,
    angle_power,
    q_constants,
)
from ..algebra.unramified import UnramifiedElement
from ..bc.rep import SigmaSpec
from .bernoulli import bernoulli_eval, bernoulli_number


class PoleError(ArithmeticError):
    """beta is within working precision of the pole at 1."""


def _gamma(g: Any) -> Fraction:
    if isinstance(g, str):
        g = Fraction(g)
    return Fraction(g) % 1


def _class_sum(b: int, a: int, weights: Mapping[int, Fraction]) -> CycloElement:
    """sum_k weights[k] zeta_b^{a k} for k mod b."""
    table = _zeta_powers(b)
    d = totient(b)
    out = [Fraction(0)] * d
    for k, w in weights.items():
        if w:
            row = table[(a * k) % b]
            for j in range(d):
                if row[j]:
                    out[j] += w * row[j]
    return CycloElement._raw(b, tuple(out))


def check_exact_m(m: int, p: int) -> None:
    _, phi = q_constants(p)
    if m <= 0 or m % phi:
        raise DomainError(f"m = {m} must be a positive multiple of phi(q) = {phi}")


def y_m(gamma: Any, m: int, f: int | None = None) -> CycloElement:
    """Y_m(gamma) = f^{m-1} sum_{j<f} zeta_gamma^j B_m(j/f) for any nonzero multiple f of b."""
    g = _gamma(gamma)
    b = g.denominator
    f = b if f is None else f
    if f <= 0 or f % b:
        raise ValueError(f"f = {f} is not a positive multiple of the denominator {b}")
    if m < 0:
        raise ValueError("m must be >= 0")
    weights: dict[int, Fraction] = {}
    for j in range(f):
        weights[j % b] = weights.get(j % b, Fraction(0)) + bernoulli_eval(m, Fraction(j, f))
    scale = Fraction(f) ** (m - 1)
    return _class_sum(b, g.numerator, {k: w * scale for k, w in weights.items()})


def _require_unramified(g: Fraction, p: int) -> None:
    if g.denominator % p == 0:
        raise DomainError(f"{g} has denominator divisible by p = {p}")


def z_exact(gamma: Any, m: int, p: int) -> CycloElement:
    """Z(gamma, 1 - m) = -(1/m)(Y_m(gamma) - p^{m-1} Y_m(p gamma))."""
    g = _gamma(gamma)
    _require_unramified(g, p)
    check_exact_m(m, p)
    return (y_m(g, m) - y_m(g * p, m) * (p ** (m - 1))) * Fraction(-1, m)


def partition_value(m: int, p: int) -> CycloElement:
    """Z(beta) = phi_beta(1) at beta = 1 - m."""
    return z_exact(0, m, p)


def residue_at_one(gamma: Any, p: int, f: int | None = None) -> CycloElement:
    """(1/f) sum_{c<f, p not | c} zeta^c: (p-1)/p for gamma in Z, else 0."""
    g = _gamma(gamma)
    _require_unramified(g, p)
    q, _ = q_constants(p)
    b = g.denominator
    f = b * q if f is None else f
    if f % (b * q):
        raise ValueError(f"f = {f} must be a multiple of b q = {b * q}")
    weights: dict[int, Fraction] = {}
    for c in range(1, f):
        if c % p:
            weights[c % b] = weights.get(c % b, Fraction(0)) + Fraction(1, f)
    return _class_sum(b, g.numerator, weights)


def weighted_value(g: Mapping[int, Any] | Callable[[int], Any], b: int, m: int, p: int, f: int | None = None) -> CycloElement:
    """Y(g, 1 - m) for g a function on Z/bZ: -(f^{m-1}/m) sum_{c<f, p not | c} g(c) B_m(c/f)."""
    if b % p == 0:
        raise DomainError(f"b = {b} must be prime to p = {p}")
    check_exact_m(m, p)
    q, _ = q_constants(p)
    f = b * q if f is None else f
    if f % (b * q):
        raise ValueError(f"f = {f} must be a multiple of b q = {b * q}")
    get = g if callable(g) else (lambda c: g.get(c, 0))
    sums: dict[int, Fraction] = {}
    for c in range(1, f):
        if c % p:
            sums[c % b] = sums.get(c % b, Fraction(0)) + bernoulli_eval(m, Fraction(c, f))
    total = CycloElement.rational(0)
    for r, s in sums.items():
        v = get(r)
        if v:
            total = total + (v if isinstance(v, CycloElement) else CycloElement.rational(v)) * s
    return total * (Fraction(f) ** (m - 1) * Fraction(-1, m))


# ---------------------------------------------------------------------------
# p-adic numerals


@dataclass
class FunctionalValue:
    """Exact cyclotomic value, or p^shift * numeric known modulo p^prec (absolute)."""

    exact: CycloElement | None = None
    numeric: UnramifiedElement | None = None
    shift: int = 0
    prec: int | float = INF

    def agrees(self, other: "FunctionalValue", N: int) -> bool:
        """Equality modulo p^N (absolute); both sides must be numeric."""
        if self.numeric is None or other.numeric is None:
            raise ValueError("agreement modulo p^N needs numeric values")
        if min(self.prec, other.prec) < N:
            raise PrecisionError(f"only {min(self.prec, other.prec)} digits known, {N} requested")
        p = self.numeric.ring.p
        s0 = min(self.shift, other.shift)
        k = N - s0
        if k <= 0:
            return True
        mod = p**k
        a = [c * p ** (self.shift - s0) % mod for c in self.numeric.coords]
        b = [c * p ** (other.shift - s0) % mod for c in other.numeric.coords]
        if len(a) != len(b):
            # Z_p sits in every context as the first coordinate
            if min(len(a), len(b)) != 1:
                raise ValueError("values live in different unramified contexts")
            width = max(len(a), len(b))
            a, b = a + [0] * (width - len(a)), b + [0] * (width - len(b))
        return a == b

    def to_json(self) -> dict:
        if self.exact is not None:
            return self.exact.to_json()
        assert self.numeric is not None
        return {**self.numeric.to_json(), "shift": self.shift, "prec_effective": self.prec}


def _scalar_mod(c: Fraction, p: int, k: int) -> int:
    mod = p**k
    return c.numerator * pow(c.denominator, -1, mod) % mod


def embed(
    value: CycloElement,
    p: int,
    K: int,
    spec: SigmaSpec | None = None,
    denominators: Iterable[int] = (),
) -> FunctionalValue:
    """rho(value) as p^shift * U with absolute precision K.

    The context covers the value's conductor and any extra ``denominators``.
    """
    spec = spec or SigmaSpec(p)
    value = value.minimize()
    b = value.conductor
    if b % p == 0:
        raise DomainError(f"conductor {b} is divisible by p = {p}")
    dens = [b, *denominators]
    nonzero = [c for c in value.coords if c]
    if not nonzero:
        ctx = spec.context(dens, 1)
        return FunctionalValue(numeric=ctx.ring.zero(), shift=K, prec=K)
    shift = min(valuation(c.numerator, p) - valuation(c.denominator, p) for c in nonzero)
    kr = max(K - shift, 1)
    ctx = spec.context(dens, kr)
    acc = ctx.ring.zero()
    for i, c in enumerate(value.coords):
        if c:
            unit = c / Fraction(p) ** shift
            acc = acc + ctx.root(Fraction(i, b)) * _scalar_mod(unit, p, kr)
    return FunctionalValue(numeric=acc, shift=shift, prec=K)


def _beta_integer(beta: Any, p: int, W: int) -> tuple[int, int | float]:
    """Integer congruent to beta modulo p^W together with how many digits of beta are known."""
    if isinstance(beta, PadicNumber):
        if beta.val != INF and beta.unit and beta.val < 0:
            raise DomainError("only beta in Z_p is supported")
        known = beta.abs_prec
        return beta.residue(min(W, known)) if known != INF else beta.residue(W), known
    beta = Fraction(beta)
    if beta.denominator % p == 0:
        raise DomainError("only beta in Z_p is supported")
    return _scalar_mod(beta, p, W), INF


def z_padic(
    gamma: Any,
    beta: Any,
    p: int,
    K: int = 10,
    f: int | None = None,
    spec: SigmaSpec | None = None,
) -> FunctionalValue:
    """Evaluate the defining double sum for beta in Z_p, beta != 1, to absolute precision K.

    The j-th binomial term has valuation at least j v(f) - 1, which fixes
    where the inner series is cut.
    """
    g = _gamma(gamma)
    _require_unramified(g, p)
    q, _ = q_constants(p)
    b = g.denominator
    f = b * q if f is None else f
    if f <= 0 or f % (b * q):
        raise ValueError(f"f = {f} must be a positive multiple of b q = {b * q}")
    spec = spec or SigmaSpec(p)
    vf = valuation(f, p)
    guard = 4
    Wb = 4 * K + 64
    bint, known = _beta_integer(beta, p, Wb)
    bm1 = bint - 1
    vb = valuation(bm1, p) if bm1 % p**Wb else INF
    if vb >= K + guard or vb >= known:
        raise PoleError("beta is within working precision of 1; use residue_at_one")
    loss = vf + vb + 1
    target = K + loss + guard
    J = -(-(target + 1) // vf)
    vJ = max(valuation(factorial(j), p) for j in range(1, J + 1))
    W = target + vJ + guard
    if known != INF and known < W:
        raise PrecisionError(f"beta known to {known} digits, {W} needed")
    X = (1 - bint) % p**W  # representative of 1 - beta
    bern = [bernoulli_number(j) for j in range(J + 1)]
    binoms = [comb(X, j) for j in range(J + 1)]
    one_minus_beta = PadicNumber.from_rational(X, p, W)
    inv_bm1 = PadicNumber.from_rational(bm1, p, W).inverse()
    terms: dict[int, PadicNumber] = {}
    for c in range(1, f):
        if c % p == 0:
            continue
        s = sum(binoms[j] * Fraction(f, c) ** j * bern[j] for j in range(J + 1))
        series = PadicNumber.from_rational(s, p, target + 2) if s else PadicNumber.big_o(p, target)
        t = angle_power(c, one_minus_beta, p, W) * inv_bm1 * series / f
        r = c % b
        terms[r] = terms[r] + t if r in terms else t
    vals = [t.val for t in terms.values() if t.unit]
    prec = min(t.abs_prec for t in terms.values())
    prec = min(prec, K)
    shift = min(vals) if vals else prec
    kr = max(prec - shift, 1)
    ctx = spec.context([b], kr)
    acc = ctx.ring.zero()
    for r, t in terms.items():
        if t.unit:
            u = t.unit * p ** (t.val - shift) % p**kr
            acc = acc + ctx.root(g * r) * u
    return FunctionalValue(numeric=acc, shift=shift, prec=prec)


__all__ = [
    "FunctionalValue",
    "PoleError",
    "check_exact_m",
    "embed",
    "partition_value",
    "residue_at_one",
    "weighted_value",
    "y_m",
    "z_exact",
    "z_padic",
]
