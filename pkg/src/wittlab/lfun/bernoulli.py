"""Bernoulli numbers and polynomials, t e^{ut}/(e^t - 1) = sum B_n(u) t^n / n!."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb

from ..algebra.poly import SparsePoly


class BernoulliCache:
    """Append-only table of B_0..B_T with B_1 = -1/2."""

    def __init__(self) -> None:
        self._numbers: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def number(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("Bernoulli numbers are indexed by n >= 0")
        if n >= len(self._numbers):
            with self._lock:
                nums = self._numbers
                for k in range(len(nums), n + 1):
                    # sum_{j<=k} C(k+1, j) B_j = 0
                    s = sum(comb(k + 1, j) * nums[j] for j in range(k))
                    nums.append(-s / (k + 1))
        return self._numbers[n]

    def coefficients(self, n: int) -> list[Fraction]:
        """Little-endian coefficients of B_n(u) = sum C(n, k) B_k u^{n-k}."""
        return [comb(n, i) * self.number(n - i) for i in range(n + 1)]


_CACHE = BernoulliCache()


def bernoulli_number(n: int) -> Fraction:
    return _CACHE.number(n)


def bernoulli_coeffs(n: int) -> list[Fraction]:
    return _CACHE.coefficients(n)


def bernoulli_poly(n: int, var: str = "u") -> SparsePoly:
    return SparsePoly((var,), {(i,): c for i, c in enumerate(bernoulli_coeffs(n)) if c})


def bernoulli_eval(n: int, x: Fraction | int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(bernoulli_coeffs(n)):
        acc = acc * x + c
    return acc


def generating_function_check(T: int) -> bool:
    """Compare sum B_n(u) t^n/n! * (e^t - 1) with t e^{ut} up to t^T, as polynomials in u."""
    from math import factorial

    # (e^t - 1) = sum_{k>=1} t^k / k!
    for N in range(1, T + 1):
        # coefficient of t^N on the left: sum_{n + k = N, k >= 1} B_n(u) / (n! k!)
        lhs = [Fraction(0)] * N
        for k in range(1, N + 1):
            n = N - k
            for i, c in enumerate(bernoulli_coeffs(n)):
                lhs[i] += c / (factorial(n) * factorial(k))
        # right: t e^{ut} has coefficient u^{N-1}/(N-1)! at t^N
        rhs = [Fraction(0)] * N
        rhs[N - 1] = Fraction(1, factorial(N - 1))
        if lhs != rhs:
            return False
    return True
