"""Ghost components and the ghost-recursion kernel shared by both Witt routes."""

from __future__ import annotations

from typing import Any, Callable, Mapping

from ..algebra.ntheory import divisors
from ..algebra.rings import Ring


def ghost_value(comps: Mapping[int, Any], n: int, ring: Ring) -> Any:
    """gh_n = sum_{d | n} d * x_d^(n/d)."""
    total = ring.zero()
    for d in divisors(n):
        term = ring.pow(comps[d], n // d)
        if d != 1:
            term = ring.scale(d, term)
        total = ring.add(total, term)
    return total


def from_ghosts(indices: Any, ring: Ring, ghost_of: Callable[[int], Any]) -> dict[int, Any]:
    """Solve gh_n(c) = ghost_of(n) for n in ``indices`` (divisor closed, ascending).

    Each step divides by n exactly; over a ring with torsion the division
    raises :class:`~wittlab.algebra.rings.InexactDivision`.
    """
    comps: dict[int, Any] = {}
    for n in sorted(indices):
        acc = ghost_of(n)
        for d in divisors(n):
            if d == n:
                break
            term = ring.pow(comps[d], n // d)
            if d != 1:
                term = ring.scale(d, term)
            acc = ring.sub(acc, term)
        comps[n] = acc if n == 1 else ring.div_int(acc, n)
    return comps
