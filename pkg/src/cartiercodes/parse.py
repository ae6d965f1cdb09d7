"""Recursive-descent parser for field elements and polynomials.

Accepts ``+ - * / ^`` and parentheses over integers, the field generator
symbol and a list of variable names, e.g. ``w^5*y*z + (w+1)*x^2``.
Quotients are kept as fractions; polynomial parsing rejects a
non-constant denominator.
"""

from __future__ import annotations

import re
from typing import Sequence

from .ff import FieldCtx
from .polymat.mpoly import MPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(s: str):
    out = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            break
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif op is not None:
            if op.isspace():
                pos = m.end()
                continue
            if op not in "+-*/^()":
                raise ParseError(f"unexpected character {op!r} in {s!r}")
            out.append(("op", op))
        pos = m.end()
    return out


class _Parser:
    """Parses into fractions (numerator, denominator) of MPolys."""

    def __init__(self, text: str, ctx: FieldCtx, names: Sequence[str]):
        self.text = text
        self.ctx = ctx
        self.names = list(names)
        self.nv = len(names)
        self.toks = _tokenize(text)
        self.i = 0

    def one(self):
        return MPoly.const(self.ctx, self.nv, 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg):
        raise ParseError(f"{msg} in {self.text!r}")

    def parse(self):
        if not self.toks:
            self.fail("empty expression")
        r = self.expr()
        if self.i != len(self.toks):
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return r

    @staticmethod
    def _add(a, b, sign=1):
        (n1, d1), (n2, d2) = a, b
        if d1 == d2:
            return (n1 + n2 if sign > 0 else n1 - n2), d1
        n = n1 * d2 + n2 * d1 if sign > 0 else n1 * d2 - n2 * d1
        return n, d1 * d2

    def expr(self):
        if self.peek() == ("op", "-"):
            self.take()
            n, d = self.term()
            r = (-n, d)
        else:
            if self.peek() == ("op", "+"):
                self.take()
            r = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            r = self._add(r, self.term(), 1 if op == "+" else -1)
        return r

    def term(self):
        r = self.factor()
        while True:
            t = self.peek()
            if t == ("op", "*"):
                self.take()
                f = self.factor()
                r = (r[0] * f[0], r[1] * f[1])
            elif t == ("op", "/"):
                self.take()
                f = self.factor()
                if f[0].is_zero():
                    self.fail("division by zero")
                r = (r[0] * f[1], r[1] * f[0])
            elif t[0] in ("name", "num") or t == ("op", "("):
                f = self.factor()  # implicit product, e.g. "2w" or "x y"
                r = (r[0] * f[0], r[1] * f[1])
            else:
                return r

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            neg = False
            if self.peek() == ("op", "-"):
                self.take()
                neg = True
            kind, e = self.take()
            if kind != "num":
                self.fail("exponent must be an integer")
            n, d = base
            if neg:
                if n.is_zero():
                    self.fail("zero to a negative power")
                n, d = d, n
            return n ** e, d ** e
        return base

    def atom(self):
        kind, v = self.take()
        ctx = self.ctx
        if kind == "num":
            return MPoly.const(ctx, self.nv, ctx.from_int(v)), self.one()
        if kind == "name":
            if v in self.names:
                return MPoly.var(ctx, self.nv, self.names.index(v)), self.one()
            if v == ctx.gen:
                return MPoly.const(ctx, self.nv, ctx.gen_element()), self.one()
            self.fail(f"unknown symbol {v!r}")
        if (kind, v) == ("op", "("):
            r = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing ')'")
            return r
        self.fail("unexpected end of expression" if kind is None else f"unexpected {v!r}")


def _const_of(p: MPoly, nv: int):
    if p.is_zero():
        return 0
    if any(any(e) for e in p.terms):
        return None
    return p.terms[(0,) * nv]


def parse_fraction(text: str, ctx: FieldCtx, names: Sequence[str] = ("x", "y")):
    """Parse a rational expression into (numerator, denominator) polynomials."""
    n, d = _Parser(text, ctx, names).parse()
    c = _const_of(d, len(names))
    if c:
        return n.scale(ctx.inv(c)), MPoly.const(ctx, len(names), 1)
    return n, d


def parse_poly(text: str, ctx: FieldCtx, names: Sequence[str] = ("x", "y", "z")) -> MPoly:
    n, d = parse_fraction(text, ctx, names)
    if any(any(e) for e in d.terms):
        raise ParseError(f"expected a polynomial, got a fraction: {text!r}")
    return n


def parse_element(text: str, ctx: FieldCtx) -> int:
    n, d = _Parser(text, ctx, ()).parse()
    c = _const_of(d, 0)
    if not c:
        raise ParseError(f"division by zero in {text!r}")
    return ctx.div(n.terms.get((), 0), c)


def parse_elements(text: str, ctx: FieldCtx) -> list[int]:
    """Comma-separated list of elements."""
    return [parse_element(t, ctx) for t in text.split(",") if t.strip()]
