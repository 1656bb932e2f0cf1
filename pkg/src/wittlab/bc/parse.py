"""A small text syntax for BC elements: sums of products of e(g), mt(n), ms(n), mu(n) and rationals.

    mt(2)*e(0)*ms(3) - 2*e(1/2) + 1/3*mu(5)

mt is mu~_n, ms is mu*_n, mu is mu_n = (1/n) mu~_n.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import BCElement
from .qz import QZElement

_FACTOR = re.compile(r"\s*(?:(mt|ms|mu|e)\(\s*([^()]*?)\s*\)|(\d+(?:/\d+)?))\s*")


class ParseError(ValueError):
    pass


def _terms(text: str) -> list[tuple[int, str]]:
    text = text.strip()
    if not text:
        raise ParseError("empty expression")
    out: list[tuple[int, str]] = []
    sign, start, depth = 1, 0, 0
    if text[0] in "+-":
        sign, start = (-1 if text[0] == "-" else 1), 1
    for i in range(start, len(text)):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0:
            out.append((sign, text[start:i]))
            sign, start = (-1 if ch == "-" else 1), i + 1
    out.append((sign, text[start:]))
    return out


def _factors(term: str) -> list[tuple[str, str]]:
    out = []
    for piece in term.split("*"):
        m = _FACTOR.fullmatch(piece)
        if not m:
            raise ParseError(f"cannot parse factor {piece.strip()!r}")
        out.append((m.group(1), m.group(2)) if m.group(1) else ("num", m.group(3)))
    return out


def _index(arg: str) -> int:
    if not arg.isdigit() or int(arg) < 1:
        raise ParseError(f"expected a positive integer, got {arg!r}")
    return int(arg)


def parse_bc(text: str) -> BCElement:
    total = BCElement()
    for sign, term in _terms(text):
        acc = BCElement.one() * sign
        for kind, arg in _factors(term):
            if kind == "num":
                acc = acc * Fraction(arg)
            elif kind == "e":
                acc = acc * BCElement.e(Fraction(arg))
            elif kind == "mt":
                acc = acc * BCElement.mu_tilde(_index(arg))
            elif kind == "ms":
                acc = acc * BCElement.mu_star(_index(arg))
            else:
                acc = acc * BCElement.mu(_index(arg))
        total = total + acc
    return total


def parse_qz(text: str) -> QZElement:
    x = parse_bc(text)
    if any(key != (1, 1) for key in x.terms):
        raise ParseError("expected an element of Z[Q/Z] (no mt, ms or mu factors)")
    return x.coefficient(1, 1)
