"""Truncated big Witt vectors W_N(A) with Frobenius and Verschiebung.

Arithmetic is routed by the coefficient ring: torsion-free rings use ghost
recursion (exact division by n), all other rings evaluate the universal
integral polynomials from :mod:`wittlab.witt.universal`.
"""

from __future__ import annotations

import random
from typing import Any, Iterable, Mapping

from ..algebra.ntheory import divisors
from ..algebra.rings import ModularRing, Ring, ring_from_tag
from .core import from_ghosts, ghost_value
from .truncation import TruncationSet
from .universal import frobenius_poly, reduced_poly, universal_poly

DEFAULT_MIXED_CAP = 30
DEFAULT_PTYPICAL_CAP = 12


class TruncationError(ValueError):
    pass


class WittVector:
    __slots__ = ("trunc", "ring", "comps")

    def __init__(self, trunc: TruncationSet | Iterable[int], ring: Ring, comps: Mapping[int, Any]):
        if not isinstance(trunc, TruncationSet):
            trunc = TruncationSet(trunc)
        missing = [n for n in trunc if n not in comps]
        if missing:
            raise ValueError(f"components missing for indices {missing}")
        self.trunc = trunc
        self.ring = ring
        self.comps = {n: comps[n] for n in trunc}

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_list(cls, values: Iterable[Any], ring: Ring) -> "WittVector":
        """Components x_1, x_2, ... on the interval truncation {1..len}."""
        values = [ring.from_rational(v) if isinstance(v, int) else v for v in values]
        return cls(TruncationSet.interval(len(values)), ring, dict(enumerate(values, 1)))

    @classmethod
    def zero(cls, trunc: TruncationSet, ring: Ring) -> "WittVector":
        return cls(trunc, ring, {n: ring.zero() for n in trunc})

    @classmethod
    def one(cls, trunc: TruncationSet, ring: Ring) -> "WittVector":
        return teichmuller_vector(ring.one(), trunc, ring)

    @classmethod
    def random(cls, trunc: TruncationSet, ring: Ring, rng: random.Random, size: int = 5) -> "WittVector":
        return cls(trunc, ring, {n: ring.random(rng, size) for n in trunc})

    # -- protocol -------------------------------------------------------
    def __getitem__(self, n: int) -> Any:
        return self.comps[n]

    def __add__(self, other: "WittVector") -> "WittVector":
        return witt_add(self, other)

    def __sub__(self, other: "WittVector") -> "WittVector":
        return witt_add(self, witt_neg(other))

    def __neg__(self) -> "WittVector":
        return witt_neg(self)

    def __mul__(self, other: "WittVector") -> "WittVector":
        return witt_mul(self, other)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, WittVector):
            return NotImplemented
        return (
            self.trunc == other.trunc
            and self.ring == other.ring
            and all(self.ring.eq(self.comps[n], other.comps[n]) for n in self.trunc)
        )

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.comps.values())

    def restrict(self, trunc: TruncationSet) -> "WittVector":
        if not set(trunc.elements) <= set(self.trunc.elements):
            raise TruncationError("restriction target is not a subset")
        return WittVector(trunc, self.ring, {n: self.comps[n] for n in trunc})

    def ghosts(self) -> dict[int, Any]:
        return {n: ghost_value(self.comps, n, self.ring) for n in self.trunc}

    def __repr__(self) -> str:
        body = ", ".join(f"{n}: {self.ring.to_str(c)}" for n, c in self.comps.items())
        return f"WittVector[{self.ring.name}]({{{body}}})"

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "trunc": list(self.trunc.elements),
            "ring": self.ring.name,
            "comps": {str(n): self.ring.to_str(c) for n, c in self.comps.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any], ring: Ring | None = None) -> "WittVector":
        ring = ring or ring_from_tag(data["ring"])
        trunc = TruncationSet(data["trunc"])
        comps = {int(k): ring.from_str(v) for k, v in data["comps"].items()}
        return cls(trunc, ring, comps)


# ---------------------------------------------------------------------------
# ghost map


def ghost(x: WittVector, n: int) -> Any:
    if n not in x.trunc:
        raise TruncationError(f"index {n} is outside the truncation set")
    return ghost_value(x.comps, n, x.ring)


def route(ring: Ring) -> str:
    """Which execution strategy the router picks for ``ring``."""
    return "ghost" if ring.torsion_free else "universal"


def _check_pair(x: WittVector, y: WittVector) -> None:
    if x.trunc != y.trunc:
        raise TruncationError("truncation sets differ")
    if x.ring != y.ring:
        raise ValueError(f"ring mismatch: {x.ring.name} vs {y.ring.name}")


def _check_cap(trunc: TruncationSet, ring: Ring, cap: int | None) -> None:
    if cap is None or ring.torsion_free:
        return
    if trunc.max > cap:
        raise TruncationError(f"max index {trunc.max} exceeds the universal-polynomial cap {cap}")


def _eval_universal(op: str, n: int, values: dict[str, Any], ring: Ring) -> Any:
    if isinstance(ring, ModularRing):
        poly = reduced_poly(op, n, ring.int_modulus)
    else:
        poly = universal_poly(op, n)
    return poly.evaluate(values, ring)


def _binary_values(x: WittVector, y: WittVector, n: int) -> dict[str, Any]:
    values = {}
    for d in divisors(n):
        values[f"x{d}"] = x.comps[d]
        values[f"y{d}"] = y.comps[d]
    return values


def witt_add(x: WittVector, y: WittVector, cap: int | None = None) -> WittVector:
    _check_pair(x, y)
    ring = x.ring
    if ring.torsion_free:
        comps = from_ghosts(
            x.trunc, ring, lambda n: ring.add(ghost_value(x.comps, n, ring), ghost_value(y.comps, n, ring))
        )
    else:
        _check_cap(x.trunc, ring, cap)
        comps = {n: _eval_universal("add", n, _binary_values(x, y, n), ring) for n in x.trunc}
    return WittVector(x.trunc, ring, comps)


def witt_mul(x: WittVector, y: WittVector, cap: int | None = None) -> WittVector:
    _check_pair(x, y)
    ring = x.ring
    if ring.torsion_free:
        comps = from_ghosts(
            x.trunc, ring, lambda n: ring.mul(ghost_value(x.comps, n, ring), ghost_value(y.comps, n, ring))
        )
    else:
        _check_cap(x.trunc, ring, cap)
        comps = {n: _eval_universal("mul", n, _binary_values(x, y, n), ring) for n in x.trunc}
    return WittVector(x.trunc, ring, comps)


def componentwise_negation_valid(trunc: TruncationSet, ring: Ring) -> bool:
    """(-x)_n = -x_n holds for p-typical truncations in odd characteristic p."""
    p = ring.characteristic
    if p in (0, 2) or not isinstance(p, int):
        return False
    from ..algebra.ntheory import is_prime

    return is_prime(p) and trunc.is_p_typical(p)


def witt_neg(x: WittVector, method: str = "auto") -> WittVector:
    """Additive inverse; ``method`` is ``auto``, ``componentwise`` or ``universal``."""
    ring = x.ring
    if method == "componentwise" or (method == "auto" and componentwise_negation_valid(x.trunc, ring)):
        return WittVector(x.trunc, ring, {n: ring.neg(c) for n, c in x.comps.items()})
    if ring.torsion_free and method == "auto":
        comps = from_ghosts(x.trunc, ring, lambda n: ring.neg(ghost_value(x.comps, n, ring)))
    else:
        comps = {
            n: _eval_universal("neg", n, {f"x{d}": x.comps[d] for d in divisors(n)}, ring) for n in x.trunc
        }
    return WittVector(x.trunc, ring, comps)


def witt_scalar(x: WittVector, k: int) -> WittVector:
    """The integer multiple k*x in the Witt ring (double and add)."""
    if k < 0:
        return witt_scalar(witt_neg(x), -k)
    result = WittVector.zero(x.trunc, x.ring)
    base = x
    while k:
        if k & 1:
            result = witt_add(result, base)
        k >>= 1
        if k:
            base = witt_add(base, base)
    return result


def teichmuller_vector(a: Any, trunc: TruncationSet, ring: Ring) -> WittVector:
    comps = {n: ring.zero() for n in trunc}
    comps[1] = a
    return WittVector(trunc, ring, comps)


# ---------------------------------------------------------------------------
# Frobenius and Verschiebung


def frobenius(x: WittVector, n: int) -> WittVector:
    """F_n : W_N -> W_{N/n}, characterised by gh_r F_n = gh_{rn}."""
    if n == 1:
        return x
    target = x.trunc.quotient(n)
    ring = x.ring
    if ring.torsion_free:
        comps = from_ghosts(target, ring, lambda r: ghost_value(x.comps, r * n, ring))
    else:
        comps = {}
        for r in target:
            poly = frobenius_poly(n, r)
            if isinstance(ring, ModularRing):
                poly = poly.reduce_mod(ring.int_modulus)
            comps[r] = poly.evaluate({f"x{d}": x.comps[d] for d in divisors(r * n)}, ring)
    return WittVector(target, ring, comps)


def verschiebung(x: WittVector, n: int, target: TruncationSet | None = None) -> WittVector:
    """V_n : W_{N/n} -> W_N by reindexing; N defaults to the closure of n*trunc."""
    if target is None:
        target = x.trunc.multiple_closure(n)
    if target.quotient(n) != x.trunc:
        raise TruncationError(f"target/{n} does not equal the source truncation set")
    ring = x.ring
    comps = {m: (x.comps[m // n] if m % n == 0 else ring.zero()) for m in target}
    return WittVector(target, ring, comps)
