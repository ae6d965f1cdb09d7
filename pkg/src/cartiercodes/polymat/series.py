"""Truncated Laurent series with explicit absolute precision.

A series stores coefficients for exponents ``start .. start+len(c)-1``;
coefficients from there up to ``prec`` are known to be zero and nothing
is known at or beyond ``prec``.  Exact polynomials use ``prec = EXACT``.
Asking for information beyond the known precision raises
:class:`PrecisionError` instead of guessing.
"""

from __future__ import annotations

from typing import Sequence

from ..ff import FieldCtx

EXACT = 1 << 40


class PrecisionError(ArithmeticError):
    pass


def _strip(start, c, prec):
    i = 0
    while i < len(c) and c[i] == 0:
        i += 1
    if i == len(c):
        return prec, []
    j = len(c)
    while c[j - 1] == 0:
        j -= 1
    return start + i, c[i:j]


class LaurentSeries:
    __slots__ = ("ctx", "start", "c", "prec")

    def __init__(self, ctx: FieldCtx, start: int, coeffs: Sequence[int], prec: int):
        self.ctx = ctx
        coeffs = list(coeffs)
        if start + len(coeffs) > prec:
            coeffs = coeffs[:max(0, prec - start)]
        self.start, self.c = _strip(start, coeffs, prec)
        self.prec = prec

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, ctx, prec=EXACT):
        return cls(ctx, prec, [], prec)

    @classmethod
    def const(cls, ctx, a, prec=EXACT):
        return cls(ctx, 0, [a], prec)

    @classmethod
    def monomial(cls, ctx, e, a=1, prec=EXACT):
        return cls(ctx, e, [a], prec)

    @classmethod
    def from_poly(cls, ctx, coeffs, prec=EXACT):
        return cls(ctx, 0, coeffs, prec)

    # inspection -----------------------------------------------------------
    def is_zero_to_prec(self) -> bool:
        return not self.c

    def valuation(self) -> int:
        if not self.c:
            raise PrecisionError(f"series is zero to precision {self.prec}")
        return self.start

    def coefficient(self, e: int) -> int:
        if e >= self.prec:
            raise PrecisionError(f"coefficient {e} beyond precision {self.prec}")
        i = e - self.start
        if 0 <= i < len(self.c):
            return self.c[i]
        return 0

    def truncate(self, prec: int) -> "LaurentSeries":
        return LaurentSeries(self.ctx, self.start, self.c, min(prec, self.prec))

    # arithmetic -----------------------------------------------------------
    def __add__(self, o: "LaurentSeries") -> "LaurentSeries":
        ctx = self.ctx
        prec = min(self.prec, o.prec)
        if not self.c:
            return o.truncate(prec)
        if not o.c:
            return self.truncate(prec)
        s = min(self.start, o.start)
        e = min(prec, max(self.start + len(self.c), o.start + len(o.c)))
        if e <= s:
            return LaurentSeries.zero(ctx, prec)
        r = [0] * (e - s)
        for src in (self, o):
            off = src.start - s
            for i, x in enumerate(src.c):
                if off + i < len(r) and x:
                    r[off + i] = ctx.add(r[off + i], x)
        return LaurentSeries(ctx, s, r, prec)

    def __neg__(self):
        return LaurentSeries(self.ctx, self.start, [self.ctx.neg(x) for x in self.c], self.prec)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, a: int) -> "LaurentSeries":
        ctx = self.ctx
        if a == 0:
            return LaurentSeries.zero(ctx, self.prec)
        return LaurentSeries(ctx, self.start, [ctx.mul(a, x) for x in self.c], self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        prec = self.prec if self.prec >= EXACT // 2 else self.prec + k
        return LaurentSeries(self.ctx, self.start + k, self.c, prec)

    def __mul__(self, o: "LaurentSeries") -> "LaurentSeries":
        ctx = self.ctx
        va, vb = self.start, o.start
        prec = min(self.prec + vb if self.prec < EXACT // 2 else EXACT,
                   o.prec + va if o.prec < EXACT // 2 else EXACT)
        if not self.c or not o.c:
            return LaurentSeries.zero(ctx, prec)
        s = va + vb
        n = min(len(self.c) + len(o.c) - 1, prec - s)
        if n <= 0:
            return LaurentSeries.zero(ctx, prec)
        exp, log = ctx.exp_table, ctx.log_table
        r = [0] * n
        bl = [(j, log[x]) for j, x in enumerate(o.c) if x and j < n]
        char2 = ctx.char2
        add = ctx.add
        for i, x in enumerate(self.c):
            if i >= n:
                break
            if x:
                lx = log[x]
                for j, lb in bl:
                    if i + j >= n:
                        break
                    if char2:
                        r[i + j] ^= exp[lx + lb]
                    else:
                        r[i + j] = add(r[i + j], exp[lx + lb])
        return LaurentSeries(ctx, s, r, prec)

    def inverse(self) -> "LaurentSeries":
        ctx = self.ctx
        v = self.valuation()
        rel = self.prec - v  # relative precision
        if rel >= EXACT // 2:
            if len(self.c) == 1:
                return LaurentSeries(ctx, -v, [ctx.inv(self.c[0])], EXACT)
            raise PrecisionError("inverse of a non-monomial exact series needs a precision")
        a = self.c + [0] * max(0, rel - len(self.c))
        inv0 = ctx.inv(a[0])
        b = [0] * rel
        b[0] = inv0
        for k in range(1, rel):
            s = 0
            for i in range(1, k + 1):
                if a[i] and b[k - i]:
                    s = ctx.add(s, ctx.mul(a[i], b[k - i]))
            b[k] = ctx.neg(ctx.mul(s, inv0))
        return LaurentSeries(ctx, -v, b, rel - v)

    def with_prec(self, prec: int) -> "LaurentSeries":
        """Same coefficients, precision lowered to prec (for exact inputs)."""
        return self.truncate(prec)

    def __truediv__(self, o: "LaurentSeries") -> "LaurentSeries":
        return self * o.inverse()

    def __pow__(self, e: int) -> "LaurentSeries":
        if e < 0:
            return self.inverse() ** (-e)
        r = LaurentSeries.const(self.ctx, 1)
        a = self
        while e:
            if e & 1:
                r = r * a
            a = a * a
            e >>= 1
        return r

    def derivative(self) -> "LaurentSeries":
        ctx = self.ctx
        prec = self.prec - 1 if self.prec < EXACT // 2 else EXACT
        if not self.c:
            return LaurentSeries.zero(ctx, prec)
        r = [ctx.smul(self.start + i, x) for i, x in enumerate(self.c)]
        return LaurentSeries(ctx, self.start - 1, r, prec)

    def compose(self, inner: "LaurentSeries") -> "LaurentSeries":
        """self(inner) for inner of positive valuation."""
        ctx = self.ctx
        vi = inner.valuation()
        if vi < 1:
            raise ValueError("inner series must have positive valuation")
        prec = EXACT
        if self.prec < EXACT // 2:
            prec = self.prec * vi
        if not self.c:
            return LaurentSeries.zero(ctx, prec)
        if inner.prec < EXACT // 2:
            prec = min(prec, self.start * vi + inner.prec - vi)
        rel = prec - self.start * vi if prec < EXACT // 2 else EXACT
        if rel < EXACT // 2 and inner.prec >= EXACT // 2:
            inner = inner.truncate(rel + vi)
        acc = LaurentSeries.zero(ctx, EXACT)
        for x in reversed(self.c):
            acc = (acc * inner + LaurentSeries.const(ctx, x)).truncate(rel)
        head = inner ** self.start
        return (acc * head).truncate(prec)

    def __eq__(self, o):
        return (isinstance(o, LaurentSeries) and self.start == o.start and self.c == o.c
                and self.prec == o.prec)

    def __repr__(self):
        terms = []
        for i, x in enumerate(self.c):
            if x:
                terms.append(f"{self.ctx.format(x)}*t^{self.start + i}")
        tail = "" if self.prec >= EXACT // 2 else f" + O(t^{self.prec})"
        return (" + ".join(terms) or "0") + tail
