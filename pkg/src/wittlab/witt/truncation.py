"""Truncation sets: finite subsets of N closed under taking divisors."""

from __future__ import annotations

from typing import Iterable, Iterator

from ..algebra.ntheory import divisors


class TruncationSet:
    __slots__ = ("elements", "_members")

    def __init__(self, elements: Iterable[int]):
        elems = tuple(sorted(set(int(n) for n in elements)))
        if not elems or elems[0] != 1:
            raise ValueError("a truncation set is nonempty and contains 1")
        members = frozenset(elems)
        for n in elems:
            if n < 1:
                raise ValueError("truncation sets contain positive integers")
            for d in divisors(n):
                if d not in members:
                    raise ValueError(f"{d} divides {n} but is missing from the truncation set")
        self.elements = elems
        self._members = members

    @classmethod
    def interval(cls, T: int) -> "TruncationSet":
        return cls(range(1, T + 1))

    @classmethod
    def p_typical(cls, p: int, length: int) -> "TruncationSet":
        return cls(p**k for k in range(length))

    @classmethod
    def closure(cls, generators: Iterable[int]) -> "TruncationSet":
        out: set[int] = set()
        for n in generators:
            out.update(divisors(n))
        return cls(out or {1})

    def __contains__(self, n: object) -> bool:
        return n in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TruncationSet) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        if self.is_interval():
            return f"TruncationSet(1..{self.max})"
        return f"TruncationSet({list(self.elements)})"

    @property
    def max(self) -> int:
        return self.elements[-1]

    def is_interval(self) -> bool:
        return self.elements[-1] == len(self.elements)

    def quotient(self, n: int) -> "TruncationSet":
        """N/n = {d : n*d in N}."""
        elems = [m // n for m in self.elements if m % n == 0]
        if not elems:
            raise ValueError(f"N/{n} is empty")
        return TruncationSet(elems)

    def multiple_closure(self, n: int) -> "TruncationSet":
        """Smallest truncation set M with M/n equal to this set."""
        return TruncationSet.closure(n * d for d in self.elements)

    def is_p_typical(self, p: int) -> bool:
        for n in self.elements:
            m = n
            while m % p == 0:
                m //= p
            if m != 1:
                return False
        return True
