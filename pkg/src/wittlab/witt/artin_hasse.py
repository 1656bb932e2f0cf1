"""The Artin-Hasse idempotent E_p and the decomposition W(A) = W_{p^oo}(A)^{I(p)}."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from ..algebra.ntheory import divisors, is_prime, split_prime_part
from ..algebra.rings import QQ, Ring
from .core import from_ghosts
from .lam import LambdaSeries, lambda_from_witt, series_mul, witt_from_lambda
from .truncation import TruncationSet
from .vectors import TruncationError, WittVector, frobenius


def is_p_power(n: int, p: int) -> bool:
    k, m = split_prime_part(n, p)
    return m == 1


class ArtinHasseContext:
    """Witt components of E_p over Z_(p) (stored as Fractions) up to index T.

    Components are determined by the recursive characterization: x_1 = 1,
    x_{p^k} = 0 for k > 0 and F_m(x)_{p^k} = 0 for m prime to p.
    """

    def __init__(self, p: int, T: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if T < 1:
            raise ValueError("T must be positive")
        self.p = p
        self.T = T
        self.components: dict[int, Fraction] = self._solve()

    def _solve(self) -> dict[int, Fraction]:
        p = self.p
        x: dict[int, Fraction] = {}
        for n in range(1, self.T + 1):
            if n == 1:
                x[n] = Fraction(1)
                continue
            k, m = split_prime_part(n, p)
            if m == 1:
                x[n] = Fraction(0)
                continue
            # F_m(x)_{p^k} = c + m * x_n; solve for x_n
            x[n] = Fraction(0)
            c = _frobenius_component(x, m, p**k)
            x[n] = -c / m
        return x

    def witt_vector(self, ring: Ring = QQ) -> WittVector:
        return WittVector(
            TruncationSet.interval(self.T), ring, {n: ring.from_rational(c) for n, c in self.components.items()}
        )

    def series(self, ring: Ring = QQ) -> LambdaSeries:
        """E_p(t) = exp(sum_k t^{p^k}/p^k) with coefficients mapped into ``ring``."""
        ghosts = [Fraction(1 if is_p_power(n, self.p) else 0) for n in range(1, self.T + 1)]
        series = LambdaSeries.from_ghosts(QQ, ghosts)
        return LambdaSeries(ring, [ring.from_rational(c) for c in series.coeffs])

    def ghosts(self) -> list[Fraction]:
        return lambda_from_witt(self.witt_vector()).ghosts()

    def conditions(self) -> dict[str, bool]:
        """The three defining conditions, rechecked on the stored components."""
        p, x = self.p, self.components
        first = x[1] == 1
        p_zero = all(x[n] == 0 for n in x if n > 1 and is_p_power(n, p))
        frob_zero = True
        for n in range(2, self.T + 1):
            k, m = split_prime_part(n, p)
            if m > 1 and _frobenius_component(x, m, p**k) != 0:
                frob_zero = False
        return {"x1=1": first, "x_p^k=0": p_zero, "F_m(x)_p^k=0": frob_zero}

    def idempotent(self, n: int) -> LambdaSeries:
        """E_p(n) = (1/n) V_n(E_p) as a series over Q (n prime to p)."""
        if n % self.p == 0:
            raise ValueError("n must be prime to p")
        return self.series().substitute_power(n).root(n)


def _frobenius_component(x: dict[int, Fraction], m: int, r: int) -> Fraction:
    """F_m(x)_r over Q from the ghost identity gh_s F_m = gh_{sm}."""
    comps = from_ghosts(divisors(r), QQ, lambda s: _ghost(x, s * m))
    return comps[r]


def _ghost(x: dict[int, Fraction], n: int) -> Fraction:
    return sum((d * x[d] ** (n // d) for d in divisors(n)), Fraction(0))


def artin_hasse(p: int, T: int) -> ArtinHasseContext:
    return ArtinHasseContext(p, T)


def theta_decompose(x: WittVector, p: int, M: int, K: int) -> dict[int, list[Any]]:
    """(Theta(x)_n)_{p^k} = F_n(x)_{p^k} for n in I(p), n <= M, k < K."""
    out: dict[int, list[Any]] = {}
    for n in range(1, M + 1):
        if n % p == 0:
            continue
        top = n * p ** (K - 1)
        if top not in x.trunc:
            raise TruncationError(f"index {top} is needed but the truncation stops at {x.trunc.max}")
        local = x.restrict(TruncationSet.closure([top]))
        fx = frobenius(local, n)
        out[n] = [fx[p**k] for k in range(K)]
    return out


def artin_hasse_substitution(ctx: ArtinHasseContext, ring: Ring, y: Any, j: int, T: int) -> list[Any]:
    """Coefficients of E_p(y t^j) up to degree T (index 0 included)."""
    e = ctx.series(ring)
    out = [ring.one()] + [ring.zero()] * T
    power = ring.one()
    for k in range(1, T // j + 1):
        power = ring.mul(power, y)
        out[k * j] = ring.mul(e[k], power)
    return out


def fixed_point(lam: Sequence[Any], ring: Ring, p: int, T: int) -> WittVector:
    """L(lambda) = sum_m (1/m) V_m(E_p * lambda) in W_{1..T}(A) for an F_p-algebra A.

    ``lam`` lists the p-typical components lambda_{p^k}.  Built through
    phi(L(lambda)) = prod_{n in I(p)} h(t^n)^{1/n} with h = prod_k E_p(lambda_{p^k} t^{p^k}).
    """
    ctx = ArtinHasseContext(p, T)
    h = [ring.one()] + [ring.zero()] * T
    for k, value in enumerate(lam):
        j = p**k
        if j > T:
            break
        if not ring.is_zero(value):
            h = series_mul(h, artin_hasse_substitution(ctx, ring, value, j, T), ring, T)
    hs = LambdaSeries(ring, h[1:])
    total = [ring.one()] + [ring.zero()] * T
    for n in range(1, T + 1):
        if n % p:
            part = hs.substitute_power(n).root(n)
            total = series_mul(total, part.full(), ring, T)
    return witt_from_lambda(LambdaSeries(ring, total[1:]))
