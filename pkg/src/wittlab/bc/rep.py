"""The representation pi_sigma of the integral BC algebra on truncated W(F_p-bar).

Through Theta, W(F_p-bar) is a product of copies of Z_p^ur indexed by I(p),
the integers prime to p.  A RepVector keeps finitely many coordinates, all in
one truncated unramified ring Z_{p^d}/p^K.  Roots of unity are embedded by
Teichmueller lifts of the powers of the generator fixed by a compatible
sequence, optionally twisted by units at finitely many primes l != p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Any, Iterable, Mapping

from ..algebra.ntheory import factorint, lcm, multiplicative_order, split_prime_part
from ..algebra.unramified import UnramifiedElement, UnramifiedRing
from ..fbar.conway import ConwaySequence
from .algebra import BCElement
from .qz import QZElement, frobenius_qz, retraction, rho_tilde_n, sigma_n


class TruncationOverflow(IndexError):
    """An operator moved a nonzero coordinate past the index bound M."""


class ResidueDegreeError(ValueError):
    """A root of unity does not live in the context's unramified ring."""


@dataclass(frozen=True)
class SigmaSpec:
    """Embedding of mu^(p) into Z_p^ur: Teichmueller through ``seq``, then finite twists.

    A twist ``(l, k, u)`` acts on the l-primary part of Q/Z of order dividing
    l^k by multiplication with the unit u.
    """

    p: int
    seq: ConwaySequence | None = None
    twists: tuple[tuple[int, int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        for ell, k, u in self.twists:
            if ell == self.p:
                raise ValueError("twist moduli must be prime to p")
            if u % ell == 0:
                raise ValueError(f"{u} is not a unit modulo {ell}^{k}")

    def twist(self, gamma: Fraction) -> Fraction:
        gamma = Fraction(gamma) % 1
        if not self.twists:
            return gamma
        b = gamma.denominator
        parts: dict[int, Fraction] = {}
        # CRT split of gamma into primary components
        for ell, e in factorint(b) if b > 1 else ():
            q = ell**e
            rest = b // q
            parts[ell] = Fraction(gamma.numerator * pow(rest, -1, q) % q, q)
        for ell, k, u in self.twists:
            if ell in parts:
                g = parts[ell]
                if (ell**k) % g.denominator:
                    raise ResidueDegreeError(f"twist at {ell} is only defined on {ell}^{k}-torsion")
                parts[ell] = g * u % 1
        return sum(parts.values(), Fraction(0)) % 1

    def sequence_for(self, d: int) -> ConwaySequence:
        if self.seq is not None and d in self.seq:
            return self.seq
        return ConwaySequence.for_levels(self.p, [d])

    def context(self, denominators: Iterable[int], K: int) -> "RepContext":
        return RepContext.build(self, denominators, K)


def degree_for(p: int, denominators: Iterable[int]) -> int:
    """lcm of the orders of p modulo the prime-to-p parts of the denominators."""
    d = 1
    for b in denominators:
        m = split_prime_part(b, p)[1]
        if m > 1:
            d = lcm(d, multiplicative_order(p, m))
    return d


@lru_cache(maxsize=32)
def _ring(p: int, modulus: tuple[int, ...], K: int) -> UnramifiedRing:
    return UnramifiedRing(p, modulus, K)


class RepContext:
    """The shared (p, d, K) ring plus the cached embedding of roots of unity."""

    def __init__(self, spec: SigmaSpec, d: int, K: int):
        self.spec = spec
        self.p = spec.p
        self.d = d
        self.K = K
        seq = spec.sequence_for(d)
        self.ring = _ring(self.p, tuple(seq[d]), K)
        self._roots: dict[Fraction, UnramifiedElement] = {}

    @classmethod
    def build(cls, spec: SigmaSpec, denominators: Iterable[int], K: int) -> "RepContext":
        return cls(spec, degree_for(spec.p, denominators), K)

    def root(self, gamma: Fraction) -> UnramifiedElement:
        """rho(zeta_gamma) for gamma in mu^(p)."""
        gamma = Fraction(gamma) % 1
        out = self._roots.get(gamma)
        if out is not None:
            return out
        g = self.spec.twist(gamma)
        b = g.denominator
        if b % self.p == 0:
            raise ValueError(f"denominator {b} is divisible by p = {self.p}")
        N = self.p**self.d - 1
        if N % b:
            raise ResidueDegreeError(f"{b}-th roots of unity need residue degree {multiplicative_order(self.p, b)}, context has {self.d}")
        out = self.ring.theta ** (g.numerator * (N // b))
        self._roots[gamma] = out
        return out

    def scalar(self, c: int | Fraction) -> UnramifiedElement:
        c = Fraction(c)
        if c.denominator % self.p == 0:
            raise ValueError(f"coefficient {c} is not p-integral")
        return self.ring.scalar(c.numerator * pow(c.denominator, -1, self.ring.N))

    def vector(self, comps: Mapping[int, Any] | None = None, M: int = 10**6) -> "RepVector":
        return RepVector(self, M, comps or {})

    def basis(self, m: int, M: int = 10**6) -> "RepVector":
        return RepVector(self, M, {m: self.ring.one()})

    def random_scalar(self, rng: random.Random) -> UnramifiedElement:
        return self.ring.elem([rng.randrange(self.ring.N) for _ in range(self.d)])


class RepVector:
    """Finitely supported vector sum_n c_n eps_n, n in I(p), n <= M."""

    __slots__ = ("ctx", "M", "comps")

    def __init__(self, ctx: RepContext, M: int, comps: Mapping[int, Any]):
        self.ctx = ctx
        self.M = M
        clean: dict[int, UnramifiedElement] = {}
        for n, c in comps.items():
            if n % ctx.p == 0 or n < 1:
                raise ValueError(f"index {n} is not in I({ctx.p})")
            if n > M:
                raise TruncationOverflow(f"index {n} exceeds bound {M}")
            if not isinstance(c, UnramifiedElement):
                c = ctx.ring.elem(c) if isinstance(c, (list, tuple)) else ctx.scalar(c)
            if any(c.coords):
                clean[n] = c
        self.comps = clean

    @property
    def p(self) -> int:
        return self.ctx.p

    def _new(self, comps: Mapping[int, UnramifiedElement]) -> "RepVector":
        return RepVector(self.ctx, self.M, comps)

    def __add__(self, other: "RepVector") -> "RepVector":
        out = dict(self.comps)
        for n, c in other.comps.items():
            out[n] = out[n] + c if n in out else c
        return self._new(out)

    def __neg__(self) -> "RepVector":
        return self._new({n: -c for n, c in self.comps.items()})

    def __sub__(self, other: "RepVector") -> "RepVector":
        return self + (-other)

    def scale(self, lam: UnramifiedElement | int) -> "RepVector":
        return self._new({n: c * lam for n, c in self.comps.items()})

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, RepVector) and self.comps == other.comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __repr__(self) -> str:
        body = ", ".join(f"{n}: {list(c.coords)}" for n, c in sorted(self.comps.items()))
        return f"RepVector({{{body}}} mod {self.p}^{self.ctx.K})"

    def to_json(self) -> dict:
        r = self.ctx.ring
        return {
            "p": r.p,
            "d": r.d,
            "prec": r.K,
            "modulus": list(r.modulus),
            "M": self.M,
            "comps": {str(n): list(c.coords) for n, c in sorted(self.comps.items())},
        }

    # -- generators -------------------------------------------------------
    def frobenius(self, k: int = 1) -> "RepVector":
        """fr^k componentwise (k may be negative)."""
        return self._new({n: c.frobenius(k) for n, c in self.comps.items()})

    def mu(self, n: int) -> "RepVector":
        """pi(mu_n): eps_j -> eps_{mj} after fr^{-k}, for n = p^k m."""
        k, m = split_prime_part(n, self.p)
        v = self.frobenius(-k) if k else self
        if m == 1:
            return v
        out = {}
        for j, c in v.comps.items():
            if j * m > self.M:
                raise TruncationOverflow(f"mu_{n} sends eps_{j} to eps_{j * m} beyond M = {self.M}")
            out[j * m] = c
        return self._new(out)

    def mu_tilde(self, n: int) -> "RepVector":
        return self.mu(n).scale(n)

    def mu_star(self, n: int) -> "RepVector":
        """pi(mu_n^*): fr^k, then eps_j -> eps_{j/m} when m | j and 0 otherwise."""
        k, m = split_prime_part(n, self.p)
        v = self.frobenius(k) if k else self
        if m == 1:
            return v
        return self._new({j // m: c for j, c in v.comps.items() if j % m == 0})

    def act_qz(self, x: QZElement, factor: int | Fraction = 1) -> "RepVector":
        """pi(factor * x), through the retraction r."""
        ctx = self.ctx
        rx = retraction(x, self.p)
        out: dict[int, UnramifiedElement] = {}
        for j, c in self.comps.items():
            acc = ctx.ring.zero()
            for g, coef in rx.support.items():
                acc = acc + ctx.root(g * j % 1) * ctx.scalar(Fraction(coef) * factor)
            out[j] = c * acc
        return self._new(out)


def pi_apply(op: BCElement, v: RepVector, spec: SigmaSpec | None = None) -> RepVector:
    """pi(op) v with pi(mu~_a X mu*_b) = a pi(mu_a) pi(X) pi(mu*_b).

    ``spec`` must agree with the one ``v`` was built over; it is accepted for
    symmetry with the rest of the interface.
    """
    if spec is not None and spec != v.ctx.spec:
        raise ValueError("vector and spec use different embeddings")
    total = v._new({})
    for (a, b), X in op.terms.items():
        w = v.mu_star(b) if b > 1 else v
        w = w.act_qz(X, factor=a)
        total = total + (w.mu(a) if a > 1 else w)
    return total


def element_denominators(elements: Iterable[Any]) -> set[int]:
    out: set[int] = set()
    for e in elements:
        if isinstance(e, QZElement):
            out |= e.denominators()
        elif isinstance(e, BCElement):
            for c in e.terms.values():
                out |= c.denominators()
    return out


# -- relation checks ---------------------------------------------------------


@dataclass
class RelationsReport:
    p: int
    bound: int
    K: int
    d: int
    results: dict[str, bool]
    failures: dict[str, str]

    @property
    def ok(self) -> bool:
        return all(self.results.values())

    def lines(self) -> list[str]:
        return [f"{name}: {'ok' if good else 'FAIL'}" for name, good in self.results.items()]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "bound": self.bound,
            "prec": self.K,
            "d": self.d,
            "ok": self.ok,
            "results": self.results,
            "failures": self.failures,
        }


def relations_check(
    p: int,
    bound: int = 30,
    K: int = 8,
    seed: int = 0,
    ns: Iterable[int] = (1, 2, 3, 4, 5, 6),
    samples: int = 2,
    spec: SigmaSpec | None = None,
) -> RelationsReport:
    """Check the presentation relations as operator identities and under bc_mul."""
    rng = random.Random(seed)
    ns = list(ns)
    if p not in ns:
        ns.append(p)
    spec = spec or SigmaSpec(p)
    base_dens = [1, 2, 3, 4, 6, p, 2 * p]
    xs = [QZElement.random(rng, base_dens, terms=3) for _ in range(samples)]
    prime_to_p = [x for x in (retraction(x, p) for x in xs) if x] or [QZElement.e(0)]
    # everything pi will ever see, so that one ring covers it
    touched = [x for x in xs]
    for x in xs:
        for n in ns:
            touched += [rho_tilde_n(x, n), sigma_n(x, n)]
    ctx = spec.context(element_denominators(touched), K)
    M = bound * max(ns) ** 2 * p
    basis = [ctx.basis(j, M) for j in range(1, bound + 1) if j % p]
    scalars = [ctx.random_scalar(rng) for _ in range(samples)]

    results: dict[str, bool] = {}
    failures: dict[str, str] = {}

    def record(name: str, cases: Iterable[tuple[Any, Any, str]]) -> None:
        ok = True
        for lhs, rhs, where in cases:
            if lhs != rhs:
                ok = False
                failures.setdefault(name, where)
                break
        results[name] = ok

    mt, ms, E = BCElement.mu_tilde, BCElement.mu_star, BCElement.scalar
    # operator identities on basis vectors and algebra identities under bc_mul
    for label, pairs in (
        (
            "mu~_n x mu*_n = rho~_n(x)",
            [(mt(n) * E(x) * ms(n), E(rho_tilde_n(x, n)), f"n={n}") for n in ns for x in xs],
        ),
        (
            "mu*_n x = sigma_n(x) mu*_n",
            [(ms(n) * E(x), E(sigma_n(x, n)) * ms(n), f"n={n}") for n in ns for x in xs],
        ),
        (
            "x mu~_n = mu~_n sigma_n(x)",
            [(E(x) * mt(n), mt(n) * E(sigma_n(x, n)), f"n={n}") for n in ns for x in xs],
        ),
        (
            "mu~_nm = mu~_n mu~_m",
            [(mt(n * m), mt(n) * mt(m), f"n={n} m={m}") for n in ns for m in ns],
        ),
        (
            "mu*_nm = mu*_n mu*_m",
            [(ms(n * m), ms(n) * ms(m), f"n={n} m={m}") for n in ns for m in ns],
        ),
        ("mu*_n mu~_n = n", [(ms(n) * mt(n), BCElement.one() * n, f"n={n}") for n in ns]),
        (
            "mu~_n mu*_m = mu*_m mu~_n, (n,m)=1",
            [(mt(n) * ms(m), ms(m) * mt(n), f"n={n} m={m}") for n in ns for m in ns if _coprime(n, m)],
        ),
    ):
        # symbolic side: the two normal forms coincide
        record(f"[algebra] {label}", ((a, b, w) for a, b, w in pairs))
        # operator side: both words act identically on eps_j
        record(
            f"[operator] {label}",
            (
                (_apply_word(lhs_word, v), _apply_word(rhs_word, v), f"{w} eps_{min(v.comps)}")
                for lhs_word, rhs_word, w in _words(label, ns, xs)
                for v in basis
            ),
        )

    # skew-linearity of mu_p^* and mu_p, linearity for n in I(p)
    record(
        "fr-semilinearity of mu*_p",
        (
            (v.scale(lam).mu_star(p), v.mu_star(p).scale(lam.frobenius(1)), f"eps_{min(v.comps)}")
            for v in basis
            for lam in scalars
        ),
    )
    unit_ns = [n for n in ns if n % p]
    record(
        "Z_p^ur-linearity for n in I(p)",
        (
            (f(v.scale(lam)), f(v).scale(lam), f"eps_{min(v.comps)}")
            for v in basis
            for lam in scalars
            for n in unit_ns
            for f in (lambda w, n=n: w.mu_tilde(n), lambda w, n=n: w.mu_star(n), lambda w: w.act_qz(prime_to_p[0]))
        ),
    )
    record(
        "pi(x) = pi(r(x))",
        ((v.act_qz(x), v.act_qz(retraction(x, p)), f"eps_{min(v.comps)}") for v in basis for x in xs),
    )
    record(
        "crossed product mu*_p x mu_p = fr(x)",
        (
            (v.mu(p).act_qz(x).mu_star(p), v.act_qz(frobenius_qz(x, p)), f"eps_{min(v.comps)}")
            for v in basis
            for x in prime_to_p
        ),
    )
    jp = [QZElement.e(0) - QZElement.e(Fraction(1, p**k)) for k in (1, 2)] + [
        x - retraction(x, p) for x in xs
    ]
    record("J_p acts by zero", ((v.act_qz(x), v._new({}), f"eps_{min(v.comps)}") for v in basis for x in jp))
    return RelationsReport(p, bound, K, ctx.d, results, failures)


def _coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1


# a word is a list of letters applied right to left: ("mt", n), ("ms", n), ("x", QZElement)
def _apply_word(word: list[tuple[str, Any]], v: RepVector) -> RepVector:
    for kind, arg in reversed(word):
        if kind == "mt":
            v = v.mu_tilde(arg)
        elif kind == "ms":
            v = v.mu_star(arg)
        elif kind == "x":
            v = v.act_qz(arg)
        elif kind == "k":
            v = v.scale(arg)
        else:
            raise ValueError(kind)
    return v


def _words(label: str, ns: list[int], xs: list[QZElement]):
    if label.startswith("mu~_n x mu*_n"):
        for n in ns:
            for x in xs:
                yield [("mt", n), ("x", x), ("ms", n)], [("x", rho_tilde_n(x, n))], f"n={n}"
    elif label.startswith("mu*_n x"):
        for n in ns:
            for x in xs:
                yield [("ms", n), ("x", x)], [("x", sigma_n(x, n)), ("ms", n)], f"n={n}"
    elif label.startswith("x mu~_n"):
        for n in ns:
            for x in xs:
                yield [("x", x), ("mt", n)], [("mt", n), ("x", sigma_n(x, n))], f"n={n}"
    elif label.startswith("mu~_nm"):
        for n in ns:
            for m in ns:
                yield [("mt", n * m)], [("mt", n), ("mt", m)], f"n={n} m={m}"
    elif label.startswith("mu*_nm"):
        for n in ns:
            for m in ns:
                yield [("ms", n * m)], [("ms", n), ("ms", m)], f"n={n} m={m}"
    elif label.startswith("mu*_n mu~_n"):
        for n in ns:
            yield [("ms", n), ("mt", n)], [("k", n)], f"n={n}"
    elif label.startswith("mu~_n mu*_m"):
        for n in ns:
            for m in ns:
                if _coprime(n, m):
                    yield [("mt", n), ("ms", m)], [("ms", m), ("mt", n)], f"n={n} m={m}"


__all__ = [
    "RelationsReport",
    "RepContext",
    "RepVector",
    "ResidueDegreeError",
    "SigmaSpec",
    "TruncationOverflow",
    "degree_for",
    "pi_apply",
    "relations_check",
]
