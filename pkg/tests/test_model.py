import cmath
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from wittlab.bc.qz import QZElement
from wittlab.fbar.tower import u_index
from wittlab.model.standard import (
    SplittingError,
    delta,
    eta,
    int_valuations,
    minimal_polynomial_by_conjugates,
    pi_expansion,
    primes_above,
    reconstruct_mod_p2,
    reduce_mod_p2,
    residue_length,
    residue_map,
    residues_are_roots,
    val_inertia,
    val_ramified,
)

SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def _numeric_minpoly(ell, k, i=0):
    """Product of (X - conjugate) in floating point, rounded; independent of the cyclotomic code."""
    N = 2 ** (k + 2) if ell == 2 else ell ** (k + 1)
    t = 1 if ell == 2 else 1 + i * ell**k
    if ell == 2:
        D = [1, N - 1]
    else:
        D = sorted({pow(a, ell**k, N) for a in range(1, ell)})  # Teichmueller reps mod l^{k+1}
    values = []
    for c in range(1, N):
        if c % ell == 0:
            continue
        z = sum(cmath.exp(2j * cmath.pi * (c * s * t % N) / N) for s in D)
        if all(abs(z - w) > 1e-9 for w in values):
            values.append(z)
    poly = [1 + 0j]
    for z in values:
        poly = [0j] + poly
        for j in range(len(poly) - 1):
            poly[j] -= z * poly[j + 1]
    return tuple(round(c.real) for c in poly)


def _u_oracle(p, ell):
    if ell == 2:
        return sympy.multiplicity(2, p * p - 1) - 3
    return sympy.multiplicity(ell, p ** (ell - 1) - 1) - 1


# -- eta generators ---------------------------------------------------------------------


def test_eta_examples():
    assert eta(2, 0).minimal_polynomial() == (0, 1)
    assert eta(2, 1).minimal_polynomial_text() == "X^2 - 2"
    assert eta(3, 1).minimal_polynomial_text() == "X^3 - 3*X + 1"
    assert eta(3, 0).minimal_polynomial() == (1, 1)


@pytest.mark.parametrize("ell, k, i", [(2, 0, 0), (2, 1, 0), (2, 2, 0), (2, 3, 0), (3, 0, 0), (3, 1, 0), (3, 1, 2), (3, 2, 1), (5, 1, 0), (5, 1, 3), (7, 1, 0)])
def test_minpoly_matches_numeric_oracle(ell, k, i):
    g = eta(ell, k, i)
    want = _numeric_minpoly(ell, k, i)
    assert g.minimal_polynomial() == want
    assert minimal_polynomial_by_conjugates(g) == want
    assert len(want) - 1 == ell**k


def test_minpoly_degrees():
    assert len(eta(2, 3).minimal_polynomial()) - 1 == 8
    assert len(eta(3, 3, 1).minimal_polynomial()) - 1 == 27


def test_delta_group():
    for ell in (3, 5, 7):
        for k in range(3):
            D = delta(ell, k)
            N = ell ** (k + 1)
            assert len(D) == ell - 1
            assert all(pow(s, ell - 1, N) == 1 for s in D)
            assert {s % ell for s in D} == set(range(1, ell))
    assert delta(2, 2) == (1, 15)


@pytest.mark.parametrize("ell, k", [(2, 2), (3, 1), (3, 2), (5, 1)])
def test_eta_is_delta_invariant(ell, k):
    for i in range(1 if ell == 2 else ell):
        assert eta(ell, k, i).is_delta_invariant()


def test_eta_argument_errors():
    with pytest.raises(ValueError):
        eta(4, 1)
    with pytest.raises(ValueError):
        eta(2, 1, 1)
    with pytest.raises(ValueError):
        eta(3, -1)
    with pytest.raises(ValueError):
        eta(3, 1, 3)


def test_eta_json():
    data = eta(2, 1).to_json()
    assert data["minpoly"] == [-2, 0, 1]
    assert (data["ell"], data["k"], data["i"]) == (2, 1, 0)


# -- primes above p -----------------------------------------------------------------------


def test_primes_above_2_7():
    primes = primes_above(2, 7)
    assert len(primes) == 2
    assert {q.residues for q in primes} == {(3,), (4,)}
    assert all(r * r % 7 == 2 for q in primes for r in q.residues)
    assert primes[0].line() == "ℓ=2 p=7 residues=[3]"


@pytest.mark.parametrize("ell", SMALL_PRIMES)
@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_prime_counts(ell, p):
    if ell == p:
        with pytest.raises(ValueError):
            primes_above(ell, p)
        return
    u = u_index(p, ell)
    assert u == _u_oracle(p, ell)
    primes = primes_above(ell, p)
    assert len(primes) == ell**u
    assert all(len(q.residues) == residue_length(ell, p) for q in primes)
    assert all(residues_are_roots(q) for q in primes)


@pytest.mark.parametrize("ell, p", [(2, 17), (2, 31), (3, 19), (5, 7), (11, 3)])
def test_primes_above_larger_splitting(ell, p):
    primes = primes_above(ell, p)
    u = _u_oracle(p, ell)
    assert u >= 1 and len(primes) == ell**u
    assert len({q.residues for q in primes}) == len(primes)
    assert all(residues_are_roots(q) for q in primes)
    if ell == 2:
        # 2cos(2x) = (2cos x)^2 - 2 links consecutive levels
        for q in primes:
            for a, b in zip(q.residues, q.residues[1:]):
                assert (b * b - 2 - a) % p == 0


def test_splitting_error_is_arithmetic():
    assert issubclass(SplittingError, ArithmeticError)


# -- valuations ----------------------------------------------------------------------------


@pytest.mark.parametrize("p, m", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)])
def test_valuation_of_pi_powers(p, m):
    n = p**m
    phi = sympy.totient(n)
    for k in range(3 * phi):
        got = val_ramified(int_valuations(pi_expansion(p, m, k), p), n)
        assert got == Fraction(k, phi)


def test_val_ramified_errors_and_zero():
    assert val_ramified([float("inf")] * 2, 3) == float("inf")
    with pytest.raises(ValueError):
        val_ramified([0, 0, 0], 3)


def test_val_inertia_examples():
    E = QZElement.e
    assert val_inertia(E(0), 3).value == 0
    assert val_inertia(E(0, 9), 3).value == 2
    v = val_inertia(E(0) + E(Fraction(1, 2)), 3)
    assert v.lower_bound and v.text() == ">= 64"
    assert val_inertia(E(Fraction(1, 4)) - E(Fraction(3, 4)), 3).value == 0


@given(st.sampled_from([2, 3, 5]), st.integers(0, 3), st.sampled_from([Fraction(1, 3), Fraction(1, 4), Fraction(2, 7), Fraction(1, 5)]))
def test_val_inertia_scales(p, a, gamma):
    if gamma.denominator % p == 0:
        return
    x = QZElement.e(0) + QZElement.e(gamma)
    base = val_inertia(x, p)
    if base.lower_bound:
        return
    assert val_inertia(x * p**a, p).value == base.value + a


def test_val_inertia_rejects_bad_input():
    with pytest.raises(ValueError):
        val_inertia(QZElement.e(Fraction(1, 3)), 3)
    with pytest.raises(ValueError):
        val_inertia(QZElement.e(0, Fraction(1, 2)), 3)


# -- residues -------------------------------------------------------------------------------


def _orbit_sum(g, p):
    x, seen = QZElement(), set()
    while g not in seen:
        seen.add(g)
        x = x + QZElement.e(g)
        g = (g * p) % 1
    return x


@pytest.mark.parametrize("p, b", [(2, 3), (2, 5), (3, 7), (5, 3), (3, 5), (2, 9)])
def test_residue_of_primitive_orbit(p, b):
    # p generates (Z/b)^*, so the orbit sum is the Ramanujan sum mu(b)
    assert sympy.n_order(p, b) == sympy.totient(b)
    assert residue_map(_orbit_sum(Fraction(1, b), p), p) == sympy.mobius(b) % p


def test_residue_map_examples():
    assert residue_map(QZElement.e(0, 4), 3) == 1
    with pytest.raises(ValueError):
        residue_map(QZElement.e(Fraction(1, 4)), 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mod_p2_reconstruction(p):
    for g in (Fraction(1, 3), Fraction(1, 4), Fraction(1, 7), Fraction(2, 9)):
        if g.denominator % p == 0:
            continue
        x = _orbit_sum(g, p) + QZElement.e(g, 2)
        assert reconstruct_mod_p2(x, p) == reduce_mod_p2(x, p)
