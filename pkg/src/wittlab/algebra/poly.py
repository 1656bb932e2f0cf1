"""Sparse multivariate polynomials over Z, Q or F_p.

A :class:`SparsePoly` stores a tuple of variable names and a dict from
exponent tuples to nonzero coefficients.  Coefficients are Python ints
(over Z or F_p) or :class:`fractions.Fraction` (over Q).  When
``modulus`` is set, coefficients are kept reduced into ``0..p-1``.

Variable lists of two operands are merged in natural order (``x2`` before
``x10``), so symbolic results do not depend on the order in which
polynomials were built.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Iterable, Mapping

Coeff = int | Fraction

_NAME = re.compile(r"([A-Za-z_]+)(\d*)")


def var_key(name: str) -> tuple[str, int, str]:
    m = _NAME.fullmatch(name)
    if m is None:
        return (name, -1, name)
    head, digits = m.groups()
    return (head, int(digits) if digits else -1, name)


def merge_vars(a: Iterable[str], b: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(a) | set(b), key=var_key))


def _normalize_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class SparsePoly:
    __slots__ = ("vars", "terms", "modulus")

    def __init__(
        self,
        vars: Iterable[str],
        terms: Mapping[tuple[int, ...], Coeff] | None = None,
        modulus: int | None = None,
    ):
        self.vars = tuple(vars)
        self.modulus = modulus
        clean: dict[tuple[int, ...], Coeff] = {}
        n = len(self.vars)
        for exps, c in (terms or {}).items():
            if len(exps) != n:
                raise ValueError("exponent vector arity does not match variables")
            if modulus is not None:
                c = _mod_coeff(c, modulus)
            if c:
                clean[tuple(exps)] = _normalize_coeff(c)
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, c: Coeff, vars: Iterable[str] = (), modulus: int | None = None) -> "SparsePoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, modulus)

    @classmethod
    def var(cls, name: str, vars: Iterable[str] | None = None, modulus: int | None = None) -> "SparsePoly":
        vars = tuple(vars) if vars is not None else (name,)
        if name not in vars:
            raise ValueError(f"{name} not among {vars}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: 1}, modulus)

    @classmethod
    def _raw(cls, vars: tuple[str, ...], terms: dict, modulus: int | None) -> "SparsePoly":
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj.modulus = modulus
        return obj

    # -- structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * len(self.vars), 0)

    def used_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def embed(self, vars: Iterable[str]) -> "SparsePoly":
        """Re-express over a variable list containing every used variable."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        pos = {v: i for i, v in enumerate(vars)}
        idx = []
        for i, v in enumerate(self.vars):
            if v in pos:
                idx.append((i, pos[v]))
            elif any(e[i] for e in self.terms):
                raise ValueError(f"variable {v} is used but absent from target list")
        n = len(vars)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for i, j in idx:
                new[j] = e[i]
            out[tuple(new)] = c
        return SparsePoly._raw(vars, out, self.modulus)

    def reduce_mod(self, p: int) -> "SparsePoly":
        return SparsePoly(self.vars, self.terms, p)

    def lift(self) -> "SparsePoly":
        """Forget the modulus, keeping the canonical residues."""
        return SparsePoly._raw(self.vars, dict(self.terms), None)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other: Any) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.modulus != self.modulus:
                if self.modulus is None:
                    return other
                if other.modulus is not None:
                    raise ValueError("polynomials over different moduli")
                other = other.reduce_mod(self.modulus)
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.constant(other, self.vars, self.modulus)
        return NotImplemented

    def _align(self, other: "SparsePoly") -> tuple["SparsePoly", "SparsePoly"]:
        a, b = self, other
        if a.modulus != b.modulus:
            m = a.modulus if a.modulus is not None else b.modulus
            a, b = a.reduce_mod(m), b.reduce_mod(m)
        if a.vars != b.vars:
            vars = merge_vars(a.vars, b.vars)
            a, b = a.embed(vars), b.embed(vars)
        return a, b

    def __add__(self, other: Any) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        out = dict(a.terms)
        m = a.modulus
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if m is not None:
                s %= m
            if s:
                out[e] = _normalize_coeff(s)
            else:
                out.pop(e, None)
        return SparsePoly._raw(a.vars, out, m)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        m = self.modulus
        if m is None:
            return SparsePoly._raw(self.vars, {e: -c for e, c in self.terms.items()}, None)
        return SparsePoly._raw(self.vars, {e: (-c) % m for e, c in self.terms.items()}, m)

    def __sub__(self, other: Any) -> "SparsePoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Any) -> "SparsePoly":
        return (-self) + other

    def __mul__(self, other: Any) -> "SparsePoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out: dict[tuple[int, ...], Coeff] = {}
        get = out.get
        bterms = list(b.terms.items())
        for e1, c1 in a.terms.items():
            for e2, c2 in bterms:
                e = tuple(map(int.__add__, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        m = a.modulus
        if m is not None:
            out = {e: c % m for e, c in out.items() if c % m}
        else:
            out = {e: _normalize_coeff(c) for e, c in out.items() if c}
        return SparsePoly._raw(a.vars, out, m)

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> "SparsePoly":
        m = self.modulus
        if m is not None:
            c = _mod_coeff(c, m)
            out = {e: v * c % m for e, v in self.terms.items()}
            return SparsePoly._raw(self.vars, {e: v for e, v in out.items() if v}, m)
        if not c:
            return SparsePoly._raw(self.vars, {}, None)
        return SparsePoly._raw(self.vars, {e: _normalize_coeff(v * c) for e, v in self.terms.items()}, None)

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = SparsePoly.constant(1, self.vars, self.modulus)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def exact_div_int(self, n: int) -> "SparsePoly":
        """Divide every coefficient by ``n``; inexact integer division raises."""
        if self.modulus is not None:
            if n % self.modulus == 0:
                raise ZeroDivisionError(f"{n} is not invertible modulo {self.modulus}")
            return self.scale(pow(n, -1, self.modulus))
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, int):
                q, r = divmod(c, n)
                if r:
                    raise ArithmeticError(f"coefficient {c} not divisible by {n}")
                out[e] = q
            else:
                out[e] = _normalize_coeff(c / n)
        return SparsePoly._raw(self.vars, out, None)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(other, self.vars, self.modulus)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        if self.modulus != other.modulus:
            return False
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        used = self.used_vars()
        return hash((used, frozenset(self.embed(used).terms.items()), self.modulus))

    # -- evaluation -----------------------------------------------------
    def evaluate(self, values: Mapping[str, Any], ring: Any) -> Any:
        """Evaluate at ring elements; ``ring`` follows :class:`wittlab.algebra.rings.Ring`."""
        n = len(self.vars)
        if not self.terms:
            return ring.zero()
        fast = getattr(ring, "int_modulus", None)
        if fast is not None:
            return ring.from_int(self._evaluate_mod(values, fast))
        maxexp = [0] * n
        for e in self.terms:
            for i, k in enumerate(e):
                if k > maxexp[i]:
                    maxexp[i] = k
        powers: list[list[Any]] = []
        for i, v in enumerate(self.vars):
            if maxexp[i] == 0:
                powers.append([ring.one()])
                continue
            base = values[v]
            row = [ring.one(), base]
            for _ in range(maxexp[i] - 1):
                row.append(ring.mul(row[-1], base))
            powers.append(row)
        total = ring.zero()
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = powers[i][k] if term is None else ring.mul(term, powers[i][k])
            cval = ring.from_rational(c)
            term = cval if term is None else ring.mul(cval, term)
            total = ring.add(total, term)
        return total

    def _evaluate_mod(self, values: Mapping[str, Any], m: int) -> int:
        vals = [int(values[v]) % m if v in values else 0 for v in self.vars]
        cache: dict[tuple[int, int], int] = {}
        total = 0
        for e, c in self.terms.items():
            t = c if isinstance(c, int) else c.numerator * pow(c.denominator, -1, m)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    pw = cache.get(key)
                    if pw is None:
                        pw = cache[key] = pow(vals[i], k, m)
                    t = t * pw % m
            total += t
        return total % m

    def subs_ints(self, values: Mapping[str, Coeff]) -> Coeff:
        """Evaluate at integers or rationals exactly."""
        total: Coeff = 0
        vals = [values[v] if any(e[i] for e in self.terms) else 0 for i, v in enumerate(self.vars)]
        for e, c in self.terms.items():
            t = c
            for i, k in enumerate(e):
                if k:
                    t *= vals[i] ** k
            total += t
        if self.modulus is not None:
            total = _mod_coeff(total, self.modulus)
        return _normalize_coeff(total)

    # -- formatting -----------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Coeff]]:
        """Terms in graded-lex descending order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg = c < 0
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_coeff(mag)}*{mono}"
            else:
                body = _fmt_coeff(mag)
            if idx == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        suffix = f" mod {self.modulus}" if self.modulus else ""
        return f"SparsePoly({self.to_text()!r}{suffix})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [list(e) + [_fmt_coeff(c)] for e, c in self.sorted_terms()],
            **({"modulus": self.modulus} if self.modulus is not None else {}),
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "SparsePoly":
        vars = tuple(data["vars"])
        terms = {tuple(t[:-1]): _parse_coeff(t[-1]) for t in data["terms"]}
        return cls(vars, terms, data.get("modulus"))

    @classmethod
    def parse(
        cls, text: str, vars: Iterable[str] | None = None, modulus: int | None = None
    ) -> "SparsePoly":
        """Parse the canonical text form (``+``, ``-``, ``*``, ``^``, rational coefficients)."""
        return _Parser(text, modulus).parse(tuple(vars) if vars is not None else None)


def _mod_coeff(c: Coeff, m: int) -> int:
    if isinstance(c, Fraction):
        return c.numerator * pow(c.denominator, -1, m) % m
    return c % m


def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
    return str(c)


def _parse_coeff(s: str | int) -> Coeff:
    if isinstance(s, int):
        return s
    return _normalize_coeff(Fraction(s))


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, modulus: int | None):
        text = text.replace("−", "-").replace("**", "^")
        self.tokens: list[tuple[str, str]] = []
        for num, name, op in _TOKEN.findall(text):
            if num:
                self.tokens.append(("num", num))
            elif name:
                self.tokens.append(("var", name))
            elif op.strip():
                self.tokens.append(("op", op))
        self.pos = 0
        self.modulus = modulus

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse(self, vars: tuple[str, ...] | None) -> SparsePoly:
        terms: list[tuple[Coeff, dict[str, int]]] = []
        sign = 1
        while self.peek() is not None:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                sign = -sign if tok[1] == "-" else sign
                continue
            coeff, mono = self.term()
            terms.append((sign * coeff, mono))
            sign = 1
            nxt = self.peek()
            if nxt is not None and not (nxt[0] == "op" and nxt[1] in "+-"):
                raise ValueError(f"unexpected token {nxt[1]!r}")
        names = sorted({v for _, mono in terms for v in mono}, key=var_key)
        if vars is None:
            vars = tuple(names)
        elif not set(names) <= set(vars):
            raise ValueError(f"unknown variables {set(names) - set(vars)}")
        out: dict[tuple[int, ...], Coeff] = {}
        for c, mono in terms:
            e = tuple(mono.get(v, 0) for v in vars)
            out[e] = out.get(e, 0) + c
        return SparsePoly(vars, out, self.modulus)

    def term(self) -> tuple[Coeff, dict[str, int]]:
        coeff: Coeff = 1
        mono: dict[str, int] = {}
        while True:
            kind, val = self.take()
            if kind == "num":
                c: Coeff = int(val)
                if self.peek() == ("op", "/"):
                    self.take()
                    c = Fraction(c, int(self.take()[1]))
                coeff = coeff * c
            elif kind == "var":
                k = 1
                if self.peek() == ("op", "^"):
                    self.take()
                    k = int(self.take()[1])
                mono[val] = mono.get(val, 0) + k
            else:
                raise ValueError(f"unexpected token {val!r}")
            nxt = self.peek()
            if nxt == ("op", "*"):
                self.take()
                continue
            if nxt is not None and nxt[0] in ("var", "num"):
                continue  # implicit product, e.g. "x0 x1"
            return _normalize_coeff(coeff), mono


def ring_sum(values: Iterable[Any], ring: Any) -> Any:
    total = ring.zero()
    for v in values:
        total = ring.add(total, v)
    return total


def monomial(vars: tuple[str, ...], exps: Mapping[str, int], coeff: Coeff = 1, modulus: int | None = None) -> SparsePoly:
    e = tuple(exps.get(v, 0) for v in vars)
    return SparsePoly(vars, {e: coeff}, modulus)


def zero_poly(vars: Iterable[str] = (), modulus: int | None = None) -> SparsePoly:
    return SparsePoly(tuple(vars), {}, modulus)


__all__ = ["SparsePoly", "merge_vars", "var_key", "monomial", "zero_poly", "ring_sum"]
