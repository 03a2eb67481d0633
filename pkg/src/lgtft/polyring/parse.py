"""Reading and writing polynomials in the ASCII grammar.

Canonical output looks like ``3*x1^2*x2 - (1/2+i)*x1 + 7/3``.  The reader
accepts a superset: arbitrary parenthesised sums and products, ``^`` or
``**`` for powers, ``i`` for the imaginary unit and division by nonzero
scalars.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Sequence

from ..errors import ParseError
from .gaussian import GaussianRational
from .order import GREVLEX, MonomialOrder
from .polynomial import Polynomial, default_names

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text) - len(text[pos:].lstrip())
            raise ParseError("unexpected character", text, stripped)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", "^" if m.group(3) == "**" else m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = list(names)
        if "i" in self.names:
            raise ParseError("'i' is reserved for the imaginary unit")
        self.index = {n: k for k, n in enumerate(self.names)}
        self.tokens = _tokenize(text)
        self.pos = 0
        self.d = len(self.names)

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error("unexpected token")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[0:2] in (("op", "+"), ("op", "-")):
            sign = -1 if self.take()[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[0:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[0:2] in (("op", "*"), ("op", "/")):
            op_tok = self.take()
            q = self.factor()
            if op_tok[1] == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise self.error("division only by nonzero scalars", op_tok)
                p = p.scale(q.constant_term().inverse())
        return p

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise self.error("exponent must be a non-negative integer", tok)
            return base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return Polynomial.constant(self.d, val)
        if kind == "name":
            if val == "i":
                return Polynomial.constant(self.d, GaussianRational(0, 1))
            if val not in self.index:
                raise self.error(f"unknown variable {val!r}", tok)
            return Polynomial.variable(self.d, self.index[val])
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.peek()[0:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return p
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise self.error("unexpected token", tok)


def parse_polynomial(text: str, names: Optional[Sequence[str]] = None, num_vars: Optional[int] = None) -> Polynomial:
    if not isinstance(text, str):
        raise ParseError(f"expected a polynomial string, got {type(text).__name__}")
    if names is None:
        names = default_names(num_vars or 1)
    return _Parser(text, names).parse()


def parse_scalar(text: str) -> GaussianRational:
    p = _Parser(text, ["_scalar_"]).parse()
    if not p.is_constant():
        raise ParseError("expected a scalar", text, 0)
    return p.constant_term()


def format_scalar(c: GaussianRational) -> str:
    return str(c)


def _format_monomial(exps, names) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p: Polynomial, names: Optional[Sequence[str]] = None, order: MonomialOrder = GREVLEX) -> str:
    names = list(names) if names is not None else default_names(p.num_vars)
    if len(names) != p.num_vars:
        raise ValueError("wrong number of variable names")
    if p.is_zero():
        return "0"
    out: List[str] = []
    for exps, c in p.items(order):
        mono = _format_monomial(exps, names)
        negative = c.is_real() and c.re < 0
        if negative:
            c = -c
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"
