"""Command-line front end: ``wittlab [--json] [--seed N] <group> <command> [options]``.

Text output starts with a ``# seed=N`` header; JSON output is a single object
with ``seed``, ``command`` and ``result`` keys.  Exit codes: 0 success,
1 verification failure, 2 usage or domain error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Sequence

DEFAULT_SEED = 0

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Output:
    def __init__(self, as_json: bool, seed: int, command: str):
        self.as_json = as_json
        self.seed = seed
        self.command = command
        self.lines: list[str] = []
        self.result: Any = None
        self.ok = True

    def line(self, text: str) -> None:
        self.lines.append(text)

    def render(self) -> str:
        if self.as_json:
            payload = {"seed": self.seed, "command": self.command, "ok": self.ok, "result": self.result}
            return json.dumps(payload, sort_keys=True, ensure_ascii=True)
        return "\n".join([f"# seed={self.seed}", *self.lines])


# ---------------------------------------------------------------------------
# argument helpers


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from exc


def _ring(tag: str):
    from .algebra.rings import ring_from_tag

    try:
        return ring_from_tag(tag)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _vector(ring, text: str):
    from .witt.vectors import WittVector

    return WittVector.from_list([ring.from_str(t.strip()) for t in text.split(",")], ring)


def _vector_lines(out: Output, x) -> None:
    out.result = x.to_json()
    for n, c in sorted(x.comps.items()):
        out.line(f"x_{n} = {x.ring.to_str(c)}")


# ---------------------------------------------------------------------------
# witt


def cmd_witt(args: argparse.Namespace, out: Output) -> None:
    from .witt.vectors import frobenius, ghost, verschiebung, witt_add, witt_mul

    c = args.cmd
    if c in ("add", "mul", "frob", "versch", "ghost", "theta"):
        x = _vector(args.ring, args.x)
    if c in ("add", "mul"):
        y = _vector(args.ring, args.y)
        _vector_lines(out, (witt_add if c == "add" else witt_mul)(x, y))
    elif c == "frob":
        _vector_lines(out, frobenius(x, args.n))
    elif c == "versch":
        _vector_lines(out, verschiebung(x, args.n))
    elif c == "ghost":
        value = args.ring.to_str(ghost(x, args.n))
        out.result = value
        out.line(value)
    elif c == "lambda-star":
        _lambda_star(args, out)
    elif c == "artin-hasse":
        _artin_hasse(args, out)
    elif c == "theta":
        from .witt.artin_hasse import theta_decompose

        parts = theta_decompose(x, args.p, args.M, args.K)
        out.result = {str(n): [args.ring.to_str(v) for v in vals] for n, vals in parts.items()}
        for n, vals in parts.items():
            out.line(f"n={n}: " + ", ".join(args.ring.to_str(v) for v in vals))


def _lambda_star(args: argparse.Namespace, out: Output) -> None:
    from .algebra.rings import PolynomialRing
    from .witt.lam import LambdaSeries, lambda_star

    T = args.T
    if args.a is None and args.b is None:
        names = [f"a{i}" for i in range(1, T + 1)] + [f"b{i}" for i in range(1, T + 1)]
        ring = PolynomialRing(names)
        f = LambdaSeries(ring, [ring.gen(f"a{i}") for i in range(1, T + 1)])
        g = LambdaSeries(ring, [ring.gen(f"b{i}") for i in range(1, T + 1)])
    else:
        if args.a is None or args.b is None:
            raise UsageError("pass both --a and --b, or neither for the symbolic product")
        ring = args.ring
        f = LambdaSeries(ring, [ring.from_str(t) for t in args.a.split(",")])
        g = LambdaSeries(ring, [ring.from_str(t) for t in args.b.split(",")])
        if f.T != g.T:
            raise UsageError("--a and --b must have the same length")
    h = lambda_star(f, g)
    out.result = h.to_json()
    for k, c in enumerate(h.coeffs, 1):
        out.line(f"t^{k}: {ring.to_str(c)}")


def _artin_hasse(args: argparse.Namespace, out: Output) -> None:
    from .algebra.rings import QQ
    from .witt.artin_hasse import artin_hasse
    from .witt.lam import lambda_star

    ctx = artin_hasse(args.p, args.T)
    comps = {n: str(c) for n, c in ctx.components.items()}
    series = ctx.series(QQ)
    conditions = ctx.conditions()
    idem = lambda_star(series, series).coeffs == series.coeffs
    conditions["E*E=E"] = idem
    out.ok = all(conditions.values())
    out.result = {"p": args.p, "T": args.T, "components": comps, "series": [str(c) for c in series.coeffs], "checks": conditions}
    out.line("components: " + ", ".join(f"x_{n}={c}" for n, c in comps.items()))
    out.line("series: " + ", ".join(f"t^{k}:{c}" for k, c in enumerate(series.coeffs, 1)))
    for name, good in conditions.items():
        out.line(f"{name}: {'ok' if good else 'FAIL'}")


# ---------------------------------------------------------------------------
# fbar


def cmd_fbar(args: argparse.Namespace, out: Output) -> None:
    from .fbar.conway import ConwaySequence, verify_conway
    from .fbar.tower import FieldTower, TraceInvariant, charpoly_from_conjugates, orbits_at_level, reconstruct_charpoly, u_index

    c = args.cmd
    if c == "conway-gen":
        seq = ConwaySequence.generate(args.p, args.n, args.strategy)
        out.result = [{"p": args.p, "level": n, "poly": seq.text(n)} for n in seq.levels]
        for n in seq.levels:
            out.line(f"P_{n} = {seq.text(n)}")
    elif c == "conway-verify":
        report = verify_conway(ConwaySequence.generate(args.p, args.n, args.strategy))
        out.ok = report.ok
        out.result = {"p": args.p, "ok": report.ok, "lines": report.lines()}
        for line in report.lines():
            out.line(line)
    elif c == "trace":
        seq = ConwaySequence.generate(args.p, args.n, args.strategy)
        tr = TraceInvariant(FieldTower(seq))
        table = {str(o.representative): tr(o, level=args.n) for o in orbits_at_level(args.p, args.n)}
        out.result = {"p": args.p, "level": args.n, "table": table}
        for g, v in table.items():
            out.line(f"{g}: {v}")
    elif c == "charpoly":
        seq = ConwaySequence.generate(args.p, args.n, args.strategy)
        tower = FieldTower(seq)
        rebuilt = reconstruct_charpoly(TraceInvariant(tower), args.n)
        conj = charpoly_from_conjugates(tower, args.n)
        target = tuple(seq[args.n])
        out.ok = rebuilt == target == conj
        from .algebra import fpx

        text = fpx.to_text(list(rebuilt), "T")
        out.result = {"p": args.p, "level": args.n, "poly": text, "matches": out.ok}
        out.line(text)
        out.line(f"matches P_{args.n}: {'ok' if rebuilt == target else 'FAIL'}")
        out.line(f"matches conjugates: {'ok' if conj == target else 'FAIL'}")
    elif c in ("witt-tower", "dsl-tower"):
        from .fbar.artin_schreier import dsl_chain, witt_as_tower

        levels = witt_as_tower(args.p, args.levels, args.form) if c == "witt-tower" else dsl_chain(args.p, args.levels)
        out.result = [lvl.to_json(args.p) for lvl in levels]
        for lvl in levels:
            out.line(lvl.equation())
        if args.check:
            out.ok = all(lvl.irreducible for lvl in levels)
            out.line(f"irreducible: {'ok' if out.ok else 'FAIL'}")
    elif c == "u":
        u = u_index(args.p, args.ell)
        out.result = {"p": args.p, "ell": args.ell, "u": u}
        out.line(str(u))


# ---------------------------------------------------------------------------
# bc


def cmd_bc(args: argparse.Namespace, out: Output) -> None:
    from .bc.algebra import jp_membership
    from .bc.parse import parse_bc

    c = args.cmd
    if c == "mul":
        z = parse_bc(args.x) * parse_bc(args.y)
        out.result = z.to_json()
        out.line(z.to_text())
    elif c == "apply":
        from .bc.rep import SigmaSpec, element_denominators, pi_apply

        op = parse_bc(args.x)
        spec = SigmaSpec(args.p)
        ctx = spec.context(element_denominators([op]), args.K)
        v = pi_apply(op, ctx.basis(args.m), spec)
        out.result = v.to_json()
        if not v.comps:
            out.line("0")
        for n, coeff in sorted(v.comps.items()):
            out.line(f"e_{n}: {list(coeff.coords)}")
    elif c == "jp-test":
        member = jp_membership(parse_bc(args.x), args.p)
        out.result = member
        out.line("true" if member else "false")
    elif c == "relations":
        from .bc.rep import relations_check

        report = relations_check(args.p, args.bound, args.K, seed=out.seed)
        out.ok = report.ok
        out.result = report.to_json()
        for line in report.lines():
            out.line(line)


# ---------------------------------------------------------------------------
# lfun


def _cyclo(out: Output, value) -> None:
    value = value.minimize()
    out.result = value.to_json()
    out.line(value.to_text())


def cmd_lfun(args: argparse.Namespace, out: Output) -> None:
    from .lfun import values as V

    c = args.cmd
    if c == "bernoulli":
        from .lfun.bernoulli import bernoulli_number, bernoulli_poly

        if args.number:
            value = bernoulli_number(args.n)
            out.result = str(value)
            out.line(str(value))
        else:
            text = bernoulli_poly(args.n).to_text()
            out.result = text
            out.line(text)
    elif c == "polylog":
        from .lfun.polylog import division_relation_check, polylog_neg

        f = polylog_neg(args.n)
        out.result = f.to_json()
        out.line(f.to_text())
        if args.g:
            good = division_relation_check(args.n + 1, args.g)
            out.ok = good
            out.line(f"division relation g={args.g}: {'ok' if good else 'FAIL'}")
    elif c == "y":
        _cyclo(out, V.y_m(args.gamma, args.m, args.f))
    elif c == "z-exact":
        _cyclo(out, V.z_exact(args.gamma, args.m, args.p))
    elif c == "z-padic":
        value = V.z_padic(args.gamma, args.beta, args.p, args.K, args.f)
        out.result = value.to_json()
        assert value.numeric is not None
        out.line(f"p^{value.shift} * {list(value.numeric.coords)} mod {args.p}^{value.prec}")
    elif c == "kms":
        from .bc.parse import parse_bc
        from .lfun.kms import KmsPoint, kms_verify

        res = kms_verify(parse_bc(args.x), parse_bc(args.y), KmsPoint.exact(args.p, args.m))
        out.ok = res.holds
        lhs, rhs = res.lhs.minimize(), res.rhs.minimize()
        out.result = {"holds": res.holds, "lhs": lhs.to_json(), "rhs": rhs.to_json()}
        out.line(f"lhs = {lhs.to_text()}")
        out.line(f"rhs = {rhs.to_text()}")
        out.line(f"kms: {'ok' if res.holds else 'FAIL'}")
    elif c == "residue":
        _cyclo(out, V.residue_at_one(args.gamma, args.p))
    elif c == "symmetry":
        from .lfun.kms import symmetry_check

        good = symmetry_check(args.gamma, args.m, args.p)
        out.ok = good
        out.result = good
        out.line(f"symmetry: {'ok' if good else 'FAIL'}")


# ---------------------------------------------------------------------------
# model


def cmd_model(args: argparse.Namespace, out: Output) -> None:
    from .model import standard as S

    c = args.cmd
    if c == "eta":
        g = S.eta(args.ell, args.k, args.i)
        out.result = g.to_json()
        out.line(f"value = {g.value.to_text()}")
        out.line(f"minpoly = {g.minimal_polynomial_text()}")
    elif c == "primes-above":
        primes = S.primes_above(args.ell, args.p)
        out.result = [q.to_json() for q in primes]
        for q in primes:
            out.line(q.line())
    elif c == "val":
        if args.x is not None:
            from .bc.parse import parse_qz

            v = S.val_inertia(parse_qz(args.x), args.p)
            out.result = v.to_json()
            out.line(v.text())
        elif args.coords is not None:
            if args.m is None:
                raise UsageError("--coords needs --m (the level n = p^m)")
            value = S.val_ramified(S.int_valuations(args.coords, args.p), args.p**args.m)
            out.result = str(value)
            out.line(str(value))
        else:
            raise UsageError("pass --x for an inertia valuation or --coords with --m")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wittlab", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON object")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default {DEFAULT_SEED})")
    groups = parser.add_subparsers(dest="group", required=True)

    def sub(group: argparse._SubParsersAction, name: str, **kw: Any) -> argparse.ArgumentParser:
        return group.add_parser(name, **kw)

    # witt
    w = groups.add_parser("witt", help="Witt vector arithmetic").add_subparsers(dest="cmd", required=True)
    for name in ("add", "mul"):
        s = sub(w, name)
        s.add_argument("--ring", type=_ring, default="Z")
        s.add_argument("--x", required=True)
        s.add_argument("--y", required=True)
    for name in ("frob", "versch", "ghost"):
        s = sub(w, name)
        s.add_argument("--ring", type=_ring, default="Z")
        s.add_argument("--x", required=True)
        s.add_argument("--n", type=int, required=True)
    s = sub(w, "lambda-star")
    s.add_argument("--T", type=int, default=3)
    s.add_argument("--ring", type=_ring, default="Z")
    s.add_argument("--a")
    s.add_argument("--b")
    s = sub(w, "artin-hasse")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--T", type=int, default=10)
    s = sub(w, "theta")
    s.add_argument("--ring", type=_ring, default="Z")
    s.add_argument("--x", required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--M", type=int, default=2)
    s.add_argument("--K", type=int, default=2)

    # fbar
    f = groups.add_parser("fbar", help="towers of finite fields").add_subparsers(dest="cmd", required=True)
    for name in ("conway-gen", "conway-verify", "trace", "charpoly"):
        s = sub(f, name)
        s.add_argument("--p", type=int, required=True)
        s.add_argument("--n", type=int, required=True)
        s.add_argument("--strategy", choices=("lexicographic", "first-found"), default="lexicographic")
    s = sub(f, "witt-tower")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--levels", type=int, required=True)
    s.add_argument("--form", choices=("raw", "reduced"), default="raw")
    s.add_argument("--check", action="store_true", help="also verify irreducibility")
    s = sub(f, "dsl-tower")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--levels", type=int, required=True)
    s.add_argument("--check", action="store_true")
    s = sub(f, "u")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)

    # bc
    b = groups.add_parser("bc", help="the integral BC-system").add_subparsers(dest="cmd", required=True)
    s = sub(b, "mul")
    s.add_argument("--x", required=True)
    s.add_argument("--y", required=True)
    s = sub(b, "apply")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--x", required=True)
    s.add_argument("--m", type=int, required=True, help="basis index")
    s.add_argument("--K", type=int, default=8)
    s = sub(b, "jp-test")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--x", required=True)
    s = sub(b, "relations")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--bound", type=int, default=30)
    s.add_argument("--K", type=int, default=8)

    # lfun
    lf = groups.add_parser("lfun", help="p-adic L-values and KMS").add_subparsers(dest="cmd", required=True)
    s = sub(lf, "bernoulli")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--number", action="store_true", help="print B_n instead of B_n(u)")
    s = sub(lf, "polylog")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--g", type=int, default=0, help="also check the division relation for g")
    s = sub(lf, "y")
    s.add_argument("--gamma", type=_fraction, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--f", type=int)
    for name in ("z-exact", "symmetry"):
        s = sub(lf, name)
        s.add_argument("--p", type=int, required=True)
        s.add_argument("--gamma", type=_fraction, required=True)
        s.add_argument("--m", type=int, required=True)
    s = sub(lf, "z-padic")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--gamma", type=_fraction, required=True)
    s.add_argument("--beta", type=_fraction, required=True)
    s.add_argument("--K", type=int, default=10)
    s.add_argument("--f", type=int)
    s = sub(lf, "kms")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--x", default="1")
    s.add_argument("--y", default="1")
    s = sub(lf, "residue")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--gamma", type=_fraction, required=True)

    # model
    mo = groups.add_parser("model", help="the prime-to-p standard model").add_subparsers(dest="cmd", required=True)
    s = sub(mo, "eta")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--i", type=int, default=0)
    s = sub(mo, "primes-above")
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s = sub(mo, "val")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--x", help="element of Z[Q/Z], e.g. 'e(0) + e(1/3)'")
    s.add_argument("--coords", type=_int_list, help="integer coordinates in the pi-power basis")
    s.add_argument("--m", type=int)
    return parser


HANDLERS: dict[str, Callable[[argparse.Namespace, Output], None]] = {
    "witt": cmd_witt,
    "fbar": cmd_fbar,
    "bc": cmd_bc,
    "lfun": cmd_lfun,
    "model": cmd_model,
}


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    out = Output(args.json, args.seed, f"{args.group} {args.cmd}")
    from .algebra.padic import DomainError, PrecisionError

    try:
        HANDLERS[args.group](args, out)
    except UsageError as exc:
        print(f"wittlab: error: {exc}", file=stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"wittlab: internal error: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (ValueError, DomainError, PrecisionError, ZeroDivisionError, IndexError) as exc:
        print(f"wittlab: error: {exc}", file=stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"wittlab: internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    print(out.render(), file=stdout)
    return EXIT_OK if out.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
