"""End-to-end acceptance checks, one test per criterion, each printing a PASS/FAIL line."""

import random
import time
from fractions import Fraction

import pytest

from goldens import BERNOULLI, FROBENIUS_3, STAR_PRODUCT, WITT_TOWER
from kms_corpus import corpus, gammas
from witt_props import check_case
from wittlab.algebra.padic import q_constants
from wittlab.algebra.poly import SparsePoly
from wittlab.algebra.rings import GF, ZZ, PolynomialRing
from wittlab.bc.qz import QZElement, r_rho_formula, retraction, rho_tilde_n
from wittlab.bc.rep import relations_check
from wittlab.cli import run
from wittlab.fbar.conway import ConwaySequence
from wittlab.fbar.tower import FieldTower, TraceInvariant, reconstruct_charpoly, u_index
from wittlab.lfun.bernoulli import bernoulli_poly
from wittlab.lfun.characters import dirichlet_characters, weighted_value
from wittlab.lfun.kms import KmsPoint, kms_verify
from wittlab.lfun.values import embed, z_exact, z_padic
from wittlab.model.standard import primes_above
from wittlab.witt import universal
from wittlab.witt.artin_hasse import artin_hasse
from wittlab.witt.lam import LambdaSeries, lambda_star
from wittlab.witt.vectors import frobenius


@pytest.fixture
def criterion(capsys):
    """Run ``body`` under a time budget and print one status line whatever happens."""

    def runner(number, name, budget, body):
        start = time.perf_counter()
        detail = ""
        try:
            ok, detail = body()
        except Exception as exc:  # noqa: BLE001
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        if ok and elapsed >= budget:
            ok, detail = False, f"over budget ({budget:g} s)"
        status = "PASS" if ok else "FAIL"
        with capsys.disabled():
            suffix = f" {detail}" if detail else ""
            print(f"\n[{status}] {number}. {name} ({elapsed:.2f} s){suffix}")
        assert ok, detail

    return runner


def test_01_star_product_golden(criterion):
    def body():
        names = [f"a{i}" for i in (1, 2, 3)] + [f"b{i}" for i in (1, 2, 3)]
        ring = PolynomialRing(names)
        f = LambdaSeries(ring, [ring.gen(f"a{i}") for i in (1, 2, 3)])
        g = LambdaSeries(ring, [ring.gen(f"b{i}") for i in (1, 2, 3)])
        h = lambda_star(f, g)
        bad = [k for k in (1, 2, 3) if h[k] != ring.from_str(STAR_PRODUCT[k])]
        return not bad, f"mismatch at t^{bad}" if bad else ""

    criterion(1, "star product coefficients t, t^2, t^3", 1.0, body)


def test_02_frobenius_golden(criterion, monkeypatch):
    monkeypatch.setattr(universal, "_frob_memo", {})
    monkeypatch.setenv("WITTLAB_CACHE_DIR", "")

    def body():
        bad = []
        for r in range(1, 6):
            f = universal.frobenius_poly(3, r)
            if f != SparsePoly.parse(FROBENIUS_3[r], f.vars):
                bad.append(r)
        return not bad, f"components {bad}" if bad else ""

    criterion(2, "F_3 components 1..5", 10.0, body)


def test_03_witt_tower_golden(criterion):
    def body():
        import io

        bad = []
        for p, golden in WITT_TOWER.items():
            out = io.StringIO()
            code = run(["fbar", "witt-tower", "--p", str(p), "--levels", str(len(golden))], stdout=out)
            lines = out.getvalue().splitlines()[1:]
            names = tuple(f"x{j}" for j in range(len(golden)))
            if code != 0 or len(lines) != len(golden):
                bad.append(p)
                continue
            for line, (var, rhs) in zip(lines, golden):
                lhs, got = line.split(" = ")
                if lhs != f"{var}^{p}" or SparsePoly.parse(got, names) != SparsePoly.parse(rhs, names):
                    bad.append(p)
        return not bad, f"p in {sorted(set(bad))}" if bad else ""

    criterion(3, "witt-tower output for p=2 and p=3", 30.0, body)


def test_04_bernoulli_golden(criterion):
    def body():
        bad = [n for n in range(6) if bernoulli_poly(n) != SparsePoly.parse(BERNOULLI[n], ("u",))]
        return not bad, f"n in {bad}" if bad else ""

    criterion(4, "Bernoulli polynomials B_0..B_5", 1.0, body)


def test_05_witt_property_suite(criterion):
    def body():
        failures = {}
        for ring in (ZZ, GF(2), GF(3), GF(5)):
            rng = random.Random(f"acceptance-{ring}")
            for _ in range(200):
                for name in check_case(ring, rng):
                    failures[(str(ring), name)] = failures.get((str(ring), name), 0) + 1
        return not failures, str(failures) if failures else "800 cases"

    criterion(5, "Witt identities over Z, F_2, F_3, F_5", 120.0, body)


def test_06_artin_hasse(criterion):
    def body():
        bad = []
        for p in (2, 3):
            ah = artin_hasse(p, 20)
            e = ah.series()
            if lambda_star(e, e) != e:
                bad.append(f"idempotent p={p}")
            x = ah.witt_vector()
            for m in (2, 3, 5):
                if m != p and not frobenius(x, m).is_zero():
                    bad.append(f"F_{m} p={p}")
        return not bad, ", ".join(bad)

    criterion(6, "Artin-Hasse idempotent and killed by F_m", 60.0, body)


def test_07_r_rho_closed_form(criterion):
    def body():
        rng = random.Random(7)
        bad = 0
        for _ in range(500):
            p = rng.choice([2, 3, 5, 7])
            n = rng.randint(1, 60)
            b = rng.choice([b for b in range(1, 61) if b % p])
            gamma = Fraction(rng.randrange(b), b)
            if r_rho_formula(gamma, n, p) != retraction(rho_tilde_n(QZElement.e(gamma), n), p):
                bad += 1
        return bad == 0, f"{bad} mismatches" if bad else "500 cases"

    criterion(7, "r o rho~_n closed form vs preimages", 60.0, body)


def test_08_representation_relations(criterion):
    def body():
        failed = {}
        for p in (2, 3, 5):
            report = relations_check(p, bound=30, K=8)
            if not report.ok:
                failed[p] = report.failures
        return not failed, str(failed) if failed else ""

    criterion(8, "presentation relations up to index 30 mod p^8", 120.0, body)


def test_09_kms(criterion):
    def body():
        bad = []
        for p, m, x, y in corpus():
            if not kms_verify(x, y, KmsPoint.exact(p, m)).holds:
                bad.append((p, m))
        if z_exact(0, 2, 3) != Fraction(1, 6):
            bad.append("partition value")
        if not z_padic(0, -1, 3, K=10).agrees(embed(z_exact(0, 2, 3), 3, 10), 10):
            bad.append("partition value (p-adic)")
        if z_exact(Fraction(1, 2), 2, 3) != Fraction(1, 2):
            bad.append("Z(1/2, -1)")
        return not bad, str(bad) if bad else "120 pairs"

    criterion(9, "KMS condition on the monomial corpus", 120.0, body)


def test_10_padic_cross_route(criterion):
    def body():
        bad = []
        entries = gammas(corpus())
        for p, m, g in entries:
            got = z_padic(g, 1 - m, p, K=10)
            if not got.agrees(embed(z_exact(g, m, p), p, 10), 10):
                bad.append((p, m, str(g)))
        return not bad, str(bad) if bad else f"{len(entries)} values"

    criterion(10, "z_padic(1-m) vs embedded z_exact mod p^10", 120.0, body)


def test_11_conway_trace_round_trip(criterion):
    def body():
        bad = []
        for p in (2, 3, 5):
            seq = ConwaySequence.generate(p, 8)
            tr = TraceInvariant(FieldTower(seq))
            bad += [(p, n) for n in range(1, 9) if reconstruct_charpoly(tr, n) != seq[n]]
        return not bad, str(bad) if bad else ""

    criterion(11, "charpoly reconstruction from traces", 60.0, body)


def test_12_standard_model(criterion):
    def body():
        bad = []
        primes = primes_above(2, 7)
        if len(primes) != 2 or {q.residues for q in primes} != {(3,), (4,)}:
            bad.append("primes above 7 in B(2)")
        if any(r * r % 7 != 2 for q in primes for r in q.residues):
            bad.append("residues are not roots of X^2 - 2")
        small = [2, 3, 5, 7, 11, 13]
        for ell in small:
            for p in small:
                if ell != p and len(primes_above(ell, p)) != ell ** u_index(p, ell):
                    bad.append((ell, p))
        return not bad, str(bad) if bad else ""

    criterion(12, "primes above p in the standard model", 30.0, body)


def test_13_symmetry(criterion):
    def body():
        rng = random.Random(13)
        bad = []
        for _ in range(50):
            p = rng.choice([3, 5, 7, 11])
            _, phi = q_constants(p)
            m = phi * rng.randint(1, 3)
            b = rng.choice([b for b in range(1, 13) if b % p])
            gamma = Fraction(rng.randrange(b), b)
            if z_exact(gamma, m, p) != z_exact((-gamma) % 1, m, p):
                bad.append((p, m, str(gamma)))
        checked = 0
        for p in (3, 5, 7):
            _, phi = q_constants(p)
            for b in range(3, 13):
                if b % p == 0:
                    continue
                for chi in dirichlet_characters(b):
                    if not chi.is_odd:
                        continue
                    for m in (phi, 2 * phi, 3 * phi):
                        checked += 1
                        if weighted_value(chi, b, m, p) != 0:
                            bad.append(("odd", p, b, m))
        return not bad, str(bad) if bad else f"50 values, {checked} odd-character values"

    criterion(13, "gamma <-> -gamma symmetry and odd characters", 60.0, body)
