"""The functionals phi_beta on the prime-to-p BC algebra, sigma^(beta), and the KMS condition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..algebra.cyclo import CycloElement
from ..algebra.padic import (
    DomainError,
    PadicNumber,
    angle_power,
    i_p,
    iwasawa_log,
    omega_angle,
    padic_exp,
    q_constants,
    v_q,
)
from ..bc.algebra import BCElement
from ..bc.qz import QZElement, rho_tilde_n
from .values import check_exact_m, z_exact

MODES = ("exact", "padic", "lambda")


@dataclass(frozen=True)
class KmsPoint:
    """beta = 1 - m exactly, beta in Z_p, or lambda = (1 + q)^beta in 1 + q Z_p."""

    p: int
    mode: str = "exact"
    m: int | None = None
    beta: PadicNumber | None = None
    lam: PadicNumber | None = None
    K: int = 20

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "exact":
            if self.m is None:
                raise ValueError("exact mode needs m")
            check_exact_m(self.m, self.p)
        elif self.mode == "padic":
            if self.beta is None:
                raise ValueError("padic mode needs beta")
            if self.beta.unit and self.beta.val < 0:
                raise DomainError("only beta in Z_p is supported")
        else:
            if self.lam is None:
                raise ValueError("lambda mode needs lam")
            one = PadicNumber.from_rational(1, self.p, self.K)
            diff = self.lam - one
            if diff.unit and diff.val < v_q(self.p):
                raise DomainError("lambda must lie in 1 + q Z_p")

    @classmethod
    def exact(cls, p: int, m: int) -> "KmsPoint":
        return cls(p, "exact", m=m)

    @property
    def beta_exact(self) -> int:
        assert self.m is not None
        return 1 - self.m


def sigma_beta_scalar(a: int, b: int, point: KmsPoint) -> Fraction | PadicNumber:
    """(b/a)^(beta)."""
    p = point.p
    if a % p == 0 or b % p == 0:
        raise DomainError(f"a = {a} and b = {b} must be prime to p = {p}")
    r = Fraction(b, a)
    if point.mode == "exact":
        return r ** point.beta_exact
    K = point.K
    w, _ = omega_angle(r, p, K)
    if point.mode == "padic":
        # r^(beta) = omega(r) <r>^beta
        return w * angle_power(r, point.beta, p, K)
    assert point.lam is not None
    return w * padic_exp(i_p(r, p, K) * iwasawa_log(point.lam), K)


def sigma_beta(x: BCElement, point: KmsPoint) -> BCElement:
    if point.mode != "exact":
        raise ValueError("BCElement coefficients are rational; use exact mode")
    return BCElement({(a, b): c * sigma_beta_scalar(a, b, point) for (a, b), c in x.terms.items()})


def phi_qz(X: QZElement, point: KmsPoint) -> CycloElement:
    """phi_beta on Z[mu^(p)]: linear extension of gamma -> Z(gamma, beta)."""
    total = CycloElement.rational(0)
    for g, c in X.support.items():
        total = total + z_exact(g, point.m, point.p) * c
    return total


def phi(x: BCElement, point: KmsPoint) -> CycloElement:
    """Value on the identity monomial; zero on every other normal-form monomial."""
    p = point.p
    for (a, b), c in x.terms.items():
        if a % p == 0 or b % p == 0 or not c.is_prime_to(p):
            raise DomainError("element is not supported on the prime-to-p subalgebra")
    return phi_qz(x.coefficient(1, 1), point)


def normalized_state(x: BCElement, point: KmsPoint) -> CycloElement:
    return phi(x, point) / phi(BCElement.one(), point)


@dataclass
class KmsResult:
    holds: bool
    lhs: CycloElement
    rhs: CycloElement


def kms_verify(x: BCElement, y: BCElement, point: KmsPoint) -> KmsResult:
    """phi(x sigma(y)) against phi(y x), exactly."""
    lhs = phi(x * sigma_beta(y, point), point)
    rhs = phi(y * x, point)
    return KmsResult(lhs == rhs, lhs, rhs)


def homogeneity_check(X: QZElement, n: int, point: KmsPoint) -> bool:
    """phi(rho~_n X) = n^m phi(X) for n prime to p."""
    if n % point.p == 0:
        raise DomainError(f"n = {n} must be prime to p")
    return phi_qz(rho_tilde_n(X, n), point) == phi_qz(X, point) * (n**point.m)


def symmetry_check(gamma: Any, m: int, p: int) -> bool:
    """Z(gamma) = Z(-gamma) at beta = 1 - m (p odd)."""
    if p == 2:
        raise DomainError("the symmetry statement is for odd p")
    g = Fraction(gamma) % 1
    return z_exact(g, m, p) == z_exact(-g, m, p)


def multiplicativity_defect(r: Fraction, beta1: Any, beta2: Any, p: int, K: int) -> bool:
    """r^(b1) r^(b2) = r^(b1 + b2) omega(r) in Z_p."""
    pts = [KmsPoint(p, "padic", beta=PadicNumber.from_rational(b, p, K), K=K) for b in (beta1, beta2)]
    both = KmsPoint(p, "padic", beta=PadicNumber.from_rational(Fraction(beta1) + Fraction(beta2), p, K), K=K)
    r = Fraction(r)
    lhs = sigma_beta_scalar(r.denominator, r.numerator, pts[0]) * sigma_beta_scalar(r.denominator, r.numerator, pts[1])
    w, _ = omega_angle(r, p, K)
    rhs = sigma_beta_scalar(r.denominator, r.numerator, both) * w
    return lhs.agrees(rhs, K - 2)


def lambda_of_beta(beta: Any, p: int, K: int) -> PadicNumber:
    """(1 + q)^beta for beta in Z_p."""
    q, _ = q_constants(p)
    b = beta if isinstance(beta, PadicNumber) else PadicNumber.from_rational(beta, p, K)
    return padic_exp(iwasawa_log(PadicNumber.from_rational(1 + q, p, K)) * b, K)
