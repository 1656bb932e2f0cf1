"""Prime-to-p standard model: the eta generators of B_l, primes above p, and valuations.

Primes of B(l, p) above p are read off from embeddings of the cyclotomic
ring into a finite field: zeta_N -> xi^c for c prime to N, with xi a
primitive N-th root of unity in the Conway level of degree ord_N(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Sequence

from ..algebra.cyclo import CycloElement
from ..algebra.ntheory import factorint, is_prime, multiplicative_order, totient, valuation
from ..algebra.padic import INF, teichmuller_int
from ..algebra.poly import SparsePoly
from ..algebra.unramified import UnramifiedElement
from ..bc.qz import QZElement
from ..bc.rep import SigmaSpec, degree_for
from ..fbar.conway import ConwaySequence
from ..fbar.tower import FieldTower, u_index


class SplittingError(ArithmeticError):
    """A generator failed to reduce into F_p at a level where it must split."""


def _check_primes(ell: int, p: int | None = None) -> None:
    if not is_prime(ell):
        raise ValueError(f"l = {ell} is not prime")
    if p is not None:
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if p == ell:
            raise ValueError("p and l must be distinct")


def conductor(ell: int, k: int) -> int:
    """Order of the root of unity behind eta_{l,k}."""
    return 2 ** (k + 2) if ell == 2 else ell ** (k + 1)


@lru_cache(maxsize=None)
def delta(ell: int, k: int) -> tuple[int, ...]:
    """Delta_l acting on the l^{k+1} (or 2^{k+2}) torsion, as residues mod the conductor."""
    N = conductor(ell, k)
    if ell == 2:
        return (1, N - 1)
    return tuple(sorted(teichmuller_int(a, ell, k + 1) for a in range(1, ell)))


def _eta_exponent(ell: int, k: int, i: int) -> int:
    # e(1/l^{k+1} + i/l) = zeta_N^{1 + i l^k}
    return 1 if ell == 2 else 1 + i * ell**k


def _poly_mul_linear(f: list[CycloElement], root: CycloElement) -> list[CycloElement]:
    """f * (X - root), little-endian."""
    out = [CycloElement.rational(0)] * (len(f) + 1)
    for j, c in enumerate(f):
        out[j + 1] = out[j + 1] + c
        out[j] = out[j] - c * root
    return out


@dataclass(frozen=True)
class EtaGenerator:
    ell: int
    k: int
    i: int
    value: CycloElement

    @property
    def conductor(self) -> int:
        return conductor(self.ell, self.k)

    def conjugates(self) -> list[CycloElement]:
        """Distinct Galois conjugates over Q."""
        N = self.conductor
        out: list[CycloElement] = []
        for c in range(1, N):
            if c % self.ell:
                g = self.value.galois(c)
                if g not in out:
                    out.append(g)
        return out

    def minimal_polynomial(self) -> tuple[int, ...]:
        """Little-endian integer coefficients of the monic minimal polynomial."""
        return _minpoly(self.ell, self.k, self.i)

    def minimal_polynomial_text(self, var: str = "X") -> str:
        return SparsePoly((var,), {(j,): c for j, c in enumerate(self.minimal_polynomial()) if c}).to_text()

    def is_delta_invariant(self) -> bool:
        return all(self.value.galois(s) == self.value for s in delta(self.ell, self.k))

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "k": self.k,
            "i": self.i,
            "value": self.value.to_json(),
            "minpoly": list(self.minimal_polynomial()),
        }


def eta(ell: int, k: int, i: int = 0) -> EtaGenerator:
    """eta_{l,k,i} = sum over Delta_l of e(1/l^{k+1} + i/l); for l = 2 the root has order 2^{k+2}."""
    _check_primes(ell)
    if k < 0:
        raise ValueError("k must be >= 0")
    if ell == 2 and i != 0:
        raise ValueError("eta_{2,k} has no index i")
    if not 0 <= i < ell:
        raise ValueError(f"i must lie in [0, {ell})")
    N = conductor(ell, k)
    t = _eta_exponent(ell, k, i)
    value = CycloElement.rational(0, N)
    for s in delta(ell, k):
        value = value + CycloElement.zeta(N, s * t % N)
    return EtaGenerator(ell, k, i, value)


def _ramanujan(N: int) -> list[int]:
    """Tr_{Q(zeta_N)/Q}(zeta_N^i) for i < phi(N)."""
    out = []
    for i in range(totient(N)):
        m = N // gcd(i, N)
        mu = 0 if any(e > 1 for _, e in factorint(m)) else (-1) ** len(factorint(m))
        out.append(mu * totient(N) // totient(m))
    return out


@lru_cache(maxsize=None)
def _minpoly(ell: int, k: int, i: int) -> tuple[int, ...]:
    """Characteristic polynomial of eta on B_k(l): traces of powers, then Newton's identities."""
    g = eta(ell, k, i)
    N = g.conductor
    deg = ell**k
    index = totient(N) // deg
    tr = _ramanujan(N)
    power = CycloElement.rational(1, N)
    sums = []
    for _ in range(deg):
        power = power * g.value
        sums.append(sum(c * t for c, t in zip(power.coords, tr)) / index)
    # e_j from power sums: j e_j = sum_{i=1}^{j} (-1)^{i-1} e_{j-i} s_i
    e = [Fraction(1)]
    for j in range(1, deg + 1):
        e.append(sum((-1) ** (t - 1) * e[j - t] * sums[t - 1] for t in range(1, j + 1)) / j)
    coeffs = [(-1) ** (deg - j) * e[deg - j] for j in range(deg + 1)]
    if any(c.denominator != 1 for c in coeffs):
        raise AssertionError("minimal polynomial of an algebraic integer must be integral")
    return tuple(int(c) for c in coeffs)


def minimal_polynomial_by_conjugates(g: EtaGenerator) -> tuple[int, ...]:
    """prod (X - sigma(eta)) over distinct conjugates; slower cross-check for small conductors."""
    f = [CycloElement.rational(1)]
    for c in g.conjugates():
        f = _poly_mul_linear(f, c)
    return tuple(int(c.to_rational()) for c in f)


# ---------------------------------------------------------------------------
# primes above p


@dataclass(frozen=True)
class PrimeAbove:
    """Residues a(P, j): eta_{l,k+1,i} = a(P, i + k l) mod P (for l = 2, j = k)."""

    ell: int
    p: int
    residues: tuple[int, ...]

    def line(self) -> str:
        return f"\u2113={self.ell} p={self.p} residues=[{', '.join(map(str, self.residues))}]"

    def to_json(self) -> dict:
        return {"ell": self.ell, "p": self.p, "residues": list(self.residues)}


def residue_length(ell: int, p: int) -> int:
    u = u_index(p, ell)
    return u if ell == 2 else ell * u


def _generators_by_level(ell: int, u: int) -> list[tuple[int, int]]:
    """(k + 1, i) in the order of the residue index j."""
    if ell == 2:
        return [(k + 1, 0) for k in range(u)]
    return [(k + 1, i) for k in range(u) for i in range(ell)]


@lru_cache(maxsize=None)
def primes_above(ell: int, p: int) -> tuple[PrimeAbove, ...]:
    """The l^{u(p,l)} primes of B(l, p) over p, sorted by residue tuple."""
    _check_primes(ell, p)
    u = u_index(p, ell)
    if u == 0:
        return (PrimeAbove(ell, p, ()),)
    top = conductor(ell, u)
    f = multiplicative_order(p, top)
    tower = FieldTower(ConwaySequence.for_levels(p, [f]))
    K = tower.level(f)
    _, xi = tower.root_of_unity(Fraction(1, top), f)
    powers = [K.one()]
    for _ in range(top - 1):
        powers.append(K.mul(powers[-1], xi))
    gens = _generators_by_level(ell, u)
    found: set[tuple[int, ...]] = set()
    for c in range(1, top):
        if c % ell == 0:
            continue
        res = []
        for kk, i in gens:
            N = conductor(ell, kk)
            t = _eta_exponent(ell, kk, i)
            acc = K.zero()
            for s in delta(ell, kk):
                # zeta_N = zeta_top^{top/N}
                acc = K.add(acc, powers[c * s * t * (top // N) % top])
            if any(acc[1:]):
                raise SplittingError(f"eta_{{{ell},{kk},{i}}} does not reduce into F_{p}")
            res.append(acc[0])
        found.add(tuple(res))
    out = tuple(PrimeAbove(ell, p, r) for r in sorted(found))
    if len(out) != ell**u:
        raise SplittingError(f"found {len(out)} primes, expected {ell ** u}")
    return out


def residues_are_roots(prime: PrimeAbove) -> bool:
    """Each a(P, j) is a root of the reduced minimal polynomial of its generator."""
    u = u_index(prime.p, prime.ell)
    for (kk, i), a in zip(_generators_by_level(prime.ell, u), prime.residues):
        f = _minpoly(prime.ell, kk, i)
        if sum(c * pow(a, j, prime.p) for j, c in enumerate(f)) % prime.p:
            return False
    return True


# ---------------------------------------------------------------------------
# valuations


@dataclass(frozen=True)
class Valuation:
    """A valuation, or a lower bound when the value vanished at the precision cap."""

    value: int | Fraction | float
    lower_bound: bool = False

    def text(self) -> str:
        return f">= {self.value}" if self.lower_bound else str(self.value)

    def to_json(self) -> dict:
        v = self.value
        return {"value": str(v) if v != INF else "inf", "lower_bound": self.lower_bound}


def _lift_sum(x: QZElement, ctx) -> UnramifiedElement:
    acc = ctx.ring.zero()
    for g, n in x.support.items():
        acc = acc + ctx.root(g) * ctx.scalar(n)
    return acc


def _check_integral(x: QZElement, p: int) -> None:
    if not x.is_prime_to(p):
        raise ValueError("support must lie in mu^(p)")
    if any(Fraction(c).denominator != 1 for c in x.support.values()):
        raise ValueError("coefficients must be integers")


def val_inertia(
    x: QZElement, p: int, seq: ConwaySequence | None = None, K0: int = 8, cap: int = 64
) -> Valuation:
    """v_p of sum n_j tau(xi_j) in Z_p^ur, raising the precision until it is determined."""
    _check_integral(x, p)
    spec = SigmaSpec(p, seq=seq)
    dens = x.denominators() or {1}
    K = K0
    while True:
        v = _lift_sum(x, spec.context(dens, K)).valuation()
        if v != INF:
            return Valuation(v)
        if K >= cap:
            return Valuation(cap, lower_bound=True)
        K = min(2 * K, cap)


def val_ramified(vals: Sequence[int | Fraction | float], n: int) -> Fraction | float:
    """inf_j v(a_j) + j/phi(n) for x = sum a_j pi^j, pi = zeta_n - 1, n a power of p."""
    phi = totient(n)
    if len(vals) > phi:
        raise ValueError(f"at most phi({n}) = {phi} coordinates")
    best: Fraction | float = INF
    for j, v in enumerate(vals):
        if v != INF:
            best = min(best, Fraction(v) + Fraction(j, phi))
    return best


def pi_expansion(p: int, m: int, k: int) -> list[int]:
    """Coordinates of pi^k in the basis 1, pi, ..., pi^{phi(n)-1}, pi = zeta_{p^m} - 1."""
    n = p**m
    phi = totient(n)
    # Phi_n(1 + X) = sum_{j<p} (1 + X)^{j p^{m-1}}
    g = [0] * (phi + 1)
    for j in range(p):
        e = j * p ** (m - 1)
        for i in range(e + 1):
            g[i] += comb(e, i)
    assert g[phi] == 1
    out = [0] * phi
    cur = [1] + [0] * (phi - 1)
    for _ in range(k):
        top = cur[-1]
        cur = [0] + cur[:-1]
        for i in range(phi):
            cur[i] -= top * g[i]
    out[:] = cur
    return out


def int_valuations(coords: Iterable[int], p: int) -> list[int | float]:
    return [valuation(c, p) if c else INF for c in coords]


# ---------------------------------------------------------------------------
# residue map and reconstruction


def _is_orbit_symmetric(x: QZElement, p: int) -> bool:
    return all(x.support.get((g * p) % 1, 0) == c for g, c in x.support.items())


def residue_map(x: QZElement, p: int, seq: ConwaySequence | None = None) -> int:
    """The F_p residue of sum n_j xi_j for x a sum of full Frobenius orbits."""
    _check_integral(x, p)
    if not _is_orbit_symmetric(x, p):
        raise ValueError("x is not a sum of full Frobenius orbits")
    spec = SigmaSpec(p, seq=seq)
    ctx = spec.context(x.denominators() or {1}, 1)
    r = _lift_sum(x, ctx).residue()
    if any(r[1:]):
        raise AssertionError("orbit sum is not Frobenius-fixed")
    return r[0]


def reconstruct_mod_p2(x: QZElement, p: int, seq: ConwaySequence | None = None) -> UnramifiedElement:
    """Lift residues xi_j to W_2 by a -> a^{p^d} and sum; equals the Teichmueller sum mod p^2."""
    _check_integral(x, p)
    spec = SigmaSpec(p, seq=seq)
    d = degree_for(p, x.denominators() or {1})
    residue_ctx = spec.context(x.denominators() or {1}, 1)
    ring = spec.context(x.denominators() or {1}, 2).ring
    acc = ring.zero()
    for g, n in x.support.items():
        a = ring.elem(residue_ctx.root(g).coords)
        acc = acc + (a ** (p**d)) * int(n)
    return acc


def reduce_mod_p2(x: QZElement, p: int, seq: ConwaySequence | None = None, K: int = 8) -> UnramifiedElement:
    spec = SigmaSpec(p, seq=seq)
    ctx = spec.context(x.denominators() or {1}, K)
    full = _lift_sum(x, ctx)
    ring = spec.context(x.denominators() or {1}, 2).ring
    return ring.elem(c % p**2 for c in full.coords)


__all__ = [
    "EtaGenerator",
    "PrimeAbove",
    "SplittingError",
    "Valuation",
    "delta",
    "minimal_polynomial_by_conjugates",
    "eta",
    "int_valuations",
    "pi_expansion",
    "primes_above",
    "reconstruct_mod_p2",
    "reduce_mod_p2",
    "residue_length",
    "residue_map",
    "residues_are_roots",
    "val_inertia",
    "val_ramified",
]
