"""Sparse multivariate polynomials: a dict from exponent tuples to field ints."""

from __future__ import annotations

from typing import Callable, Dict, Sequence, Tuple

from ..ff import FieldCtx, FieldError

Exps = Tuple[int, ...]


class MPoly:
    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx: FieldCtx, nvars: int, terms: Dict[Exps, int] | None = None):
        self.ctx = ctx
        self.nvars = nvars
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, ctx, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(ctx, nvars, {tuple(e): 1})

    @classmethod
    def const(cls, ctx, nvars, a):
        return cls(ctx, nvars, {(0,) * nvars: a})

    def is_zero(self):
        return not self.terms

    def _coerce(self, o):
        if isinstance(o, MPoly):
            if o.ctx != self.ctx or o.nvars != self.nvars:
                raise FieldError("polynomial ring mismatch")
            return o
        if isinstance(o, int):
            return MPoly.const(self.ctx, self.nvars, self.ctx.from_int(o))
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        add = self.ctx.add
        t = dict(self.terms)
        for e, c in o.terms.items():
            t[e] = add(t.get(e, 0), c)
        return MPoly(self.ctx, self.nvars, t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.ctx, self.nvars, {e: self.ctx.neg(c) for e, c in self.terms.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        add, mul = ctx.add, ctx.mul
        t: Dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = add(t.get(e, 0), mul(c1, c2))
        return MPoly(ctx, self.nvars, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        r = MPoly.const(self.ctx, self.nvars, 1)
        a = self
        while k:
            if k & 1:
                r = r * a
            a = a * a
            k >>= 1
        return r

    def __eq__(self, o):
        return (isinstance(o, MPoly) and self.ctx == o.ctx and self.nvars == o.nvars
                and self.terms == o.terms)

    def __hash__(self):
        return hash((self.ctx, self.nvars, frozenset(self.terms.items())))

    def scale(self, a: int) -> "MPoly":
        return MPoly(self.ctx, self.nvars, {e: self.ctx.mul(a, c) for e, c in self.terms.items()})

    def map_coeffs(self, fn: Callable[[int], int], ctx: FieldCtx | None = None) -> "MPoly":
        return MPoly(ctx or self.ctx, self.nvars, {e: fn(c) for e, c in self.terms.items()})

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def deriv(self, i: int) -> "MPoly":
        ctx = self.ctx
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                v = ctx.smul(e[i], c)
                if v:
                    e2 = list(e)
                    e2[i] -= 1
                    t[tuple(e2)] = v
        return MPoly(ctx, self.nvars, t)

    def evaluate(self, point: Sequence, ctx: FieldCtx | None = None,
                 coeff_map: Callable[[int], int] | None = None) -> int:
        """Evaluate at a point whose coordinates live in ctx (default: self.ctx)."""
        ctx = ctx or self.ctx
        mul, add, pw = ctx.mul, ctx.add, ctx.pow
        r = 0
        for e, c in self.terms.items():
            v = coeff_map(c) if coeff_map else c
            for a, k in zip(point, e):
                if k:
                    v = mul(v, pw(a, k))
            r = add(r, v)
        return r

    def eval_generic(self, point: Sequence, one, lift: Callable):
        """Evaluate in any ring: point entries support + and *, lift maps a coefficient."""
        r = None
        for e, c in sorted(self.terms.items()):
            v = lift(c)
            for a, k in zip(point, e):
                if k:
                    v = v * (a ** k)
            r = v if r is None else r + v
        return r if r is not None else lift(0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), [-x for x in t[0]]))

    def format(self, names: Sequence[str] = ("x", "y", "z"), power_style: bool = False) -> str:
        parts = []
        fmt = self.ctx.format_power if power_style else self.ctx.format
        for e, c in self.sorted_terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            s = fmt(c)
            if "+" in s:
                s = f"({s})"
            if not mono:
                parts.append(s)
            elif s == "1":
                parts.append(mono)
            else:
                parts.append(f"{s}*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return self.format(("x", "y", "z", "u", "v")[: self.nvars] if self.nvars <= 5
                           else [f"x{i}" for i in range(self.nvars)])
