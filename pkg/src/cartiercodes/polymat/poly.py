"""Univariate polynomials and rational functions over a :class:`FieldCtx`.

Coefficient lists run low to high and never carry trailing zeros; the
zero polynomial is the empty list.  The list-level helpers (``padd``,
``pmul``, ...) are what the heavier modules call; :class:`Poly` and
:class:`RatFunc` wrap them for readable code and for the public API.
"""

from __future__ import annotations

import random
from typing import Iterable, Optional, Sequence

from ..ff import FieldCtx, FieldError, prime_factors


def trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list:
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    if ctx.char2:
        for i, c in enumerate(b):
            r[i] ^= c
    else:
        add = ctx.add
        for i, c in enumerate(b):
            if c:
                r[i] = add(r[i], c)
    return trim(r)


def pneg(ctx: FieldCtx, a: Sequence[int]) -> list:
    if ctx.char2:
        return list(a)
    return [ctx.neg(c) for c in a]


def psub(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list:
    if ctx.char2:
        return padd(ctx, a, b)
    return padd(ctx, a, pneg(ctx, b))


def pscale(ctx: FieldCtx, c: int, a: Sequence[int]) -> list:
    if c == 0:
        return []
    if c == 1:
        return list(a)
    exp, log = ctx.exp_table, ctx.log_table
    lc = log[c]
    return [exp[lc + log[x]] if x else 0 for x in a]


def pmul(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list:
    if not a or not b:
        return []
    exp, log = ctx.exp_table, ctx.log_table
    if len(a) < len(b):
        a, b = b, a
    r = [0] * (len(a) + len(b) - 1)
    bl = [(j, log[c]) for j, c in enumerate(b) if c]
    if ctx.char2:
        for i, c in enumerate(a):
            if c:
                lc = log[c]
                for j, lb in bl:
                    r[i + j] ^= exp[lc + lb]
    else:
        add = ctx.add
        for i, c in enumerate(a):
            if c:
                lc = log[c]
                for j, lb in bl:
                    r[i + j] = add(r[i + j], exp[lc + lb])
    return trim(r)


def pdivmod(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    exp, log = ctx.exp_table, ctx.log_table
    n1 = ctx.size - 1
    linv = (n1 - log[b[-1]]) % n1
    bl = [(j, log[c]) for j, c in enumerate(b[:-1]) if c]
    quot = [0] * (len(a) - db)
    char2 = ctx.char2
    sub = ctx.sub
    for s in range(len(a) - 1 - db, -1, -1):
        c = a[s + db]
        if not c:
            continue
        lq = (log[c] + linv) % n1
        qc = exp[lq]
        quot[s] = qc
        a[s + db] = 0
        for j, lb in bl:
            v = exp[lq + lb]
            if char2:
                a[s + j] ^= v
            else:
                a[s + j] = sub(a[s + j], v)
    return trim(quot), trim(a[:db])


def pmod(ctx, a, b):
    return pdivmod(ctx, a, b)[1]


def pmonic(ctx: FieldCtx, a: Sequence[int]) -> list:
    a = trim(list(a))
    if not a:
        return []
    return pscale(ctx, ctx.inv(a[-1]), a)


def pgcd(ctx: FieldCtx, a: Sequence[int], b: Sequence[int]) -> list:
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, pmod(ctx, a, b)
    return pmonic(ctx, a)


def pxgcd(ctx, a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = pdivmod(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(ctx, s0, pmul(ctx, q, s1))
        t0, t1 = t1, psub(ctx, t0, pmul(ctx, q, t1))
    if not r0:
        return [], [], []
    inv = ctx.inv(r0[-1])
    return pscale(ctx, inv, r0), pscale(ctx, inv, s0), pscale(ctx, inv, t0)


def pderiv(ctx: FieldCtx, a: Sequence[int]) -> list:
    return trim([ctx.smul(i, c) for i, c in enumerate(a)][1:])


def peval(ctx: FieldCtx, a: Sequence[int], x: int) -> int:
    r = 0
    mul, add = ctx.mul, ctx.add
    for c in reversed(a):
        r = add(mul(r, x), c)
    return r


def ppow(ctx, a, e):
    r = [1]
    while e:
        if e & 1:
            r = pmul(ctx, r, a)
        a = pmul(ctx, a, a)
        e >>= 1
    return r


def ppowmod(ctx, a, e, m):
    r = [1]
    a = pmod(ctx, a, m)
    while e:
        if e & 1:
            r = pmod(ctx, pmul(ctx, r, a), m)
        a = pmod(ctx, pmul(ctx, a, a), m)
        e >>= 1
    return pmod(ctx, r, m) if len(m) > 1 else []


def pshift(ctx, a, c):
    """Coefficients of a(c + t) as a polynomial in t."""
    out = []
    for v in reversed(a):
        nxt = [0] * (len(out) + 1)
        for i, u in enumerate(out):
            nxt[i + 1] = ctx.add(nxt[i + 1], u)
            nxt[i] = ctx.add(nxt[i], ctx.mul(c, u))
        nxt[0] = ctx.add(nxt[0], v)
        out = nxt
    return trim(out)


def pmap(a: Sequence[int], fn) -> list:
    return trim([fn(c) for c in a])


def pfrob_coeffs(ctx, a, k):
    """Apply c -> c^(p^k) to every coefficient."""
    return [ctx.frob(c, k) for c in a]


def ppth_root(ctx, a):
    """For a = b(x^p), return b with coefficients replaced by their p-th roots."""
    p = ctx.p
    if any(c for i, c in enumerate(a) if i % p):
        raise ValueError("not a p-th power")
    return trim([ctx.pth_root(c) for c in a[::p]])


# -- factorisation helpers -----------------------------------------------------

def pradical(ctx, a):
    """Product of the distinct monic irreducible factors of a."""
    a = pmonic(ctx, a)
    if len(a) <= 1:
        return [1]
    d = pderiv(ctx, a)
    if not d:
        return pradical(ctx, ppth_root(ctx, a))
    g = pgcd(ctx, a, d)
    s = pdivmod(ctx, a, g)[0]
    if len(g) <= 1:
        return pmonic(ctx, s)
    rg = pradical(ctx, g)
    common = pgcd(ctx, s, rg)
    return pmonic(ctx, pdivmod(ctx, pmul(ctx, s, rg), common)[0])


def distinct_degree(ctx, f):
    """Distinct-degree factorisation of a monic squarefree f: [(k, product)]."""
    out = []
    f = pmonic(ctx, f)
    x = [0, 1]
    h = x
    k = 0
    Q = ctx.size
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = ppowmod(ctx, h, Q, f)
        g = pgcd(ctx, f, psub(ctx, h, x))
        if len(g) > 1:
            out.append((k, g))
            f = pdivmod(ctx, f, g)[0]
            h = pmod(ctx, h, f)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def equal_degree(ctx, f, k, rng: Optional[random.Random] = None):
    """Split a monic squarefree f whose irreducible factors all have degree k."""
    f = pmonic(ctx, f)
    n = len(f) - 1
    if n == k:
        return [f]
    if n == 0:
        return []
    rng = rng or random.Random(0x5EED)
    Q = ctx.size
    while True:
        a = trim([rng.randrange(Q) for _ in range(n)])
        if len(a) <= 1:
            continue
        if ctx.char2:
            # absolute trace to F_2 of F_{Q^k}, evaluated in F[x]/(f)
            t = a
            s = a
            for _ in range(ctx.m * k - 1):
                t = pmod(ctx, pmul(ctx, t, t), f)
                s = padd(ctx, s, t)
            g = pgcd(ctx, f, s)
        else:
            e = (Q ** k - 1) // 2
            g = pgcd(ctx, f, psub(ctx, ppowmod(ctx, a, e, f), [1]))
        if 0 < len(g) - 1 < n:
            return (equal_degree(ctx, g, k, rng)
                    + equal_degree(ctx, pdivmod(ctx, f, g)[0], k, rng))


def irreducible_factors(ctx, f):
    """Distinct monic irreducible factors of f, sorted deterministically."""
    out = []
    for k, g in distinct_degree(ctx, pradical(ctx, f)):
        out.extend(equal_degree(ctx, g, k))
    return sorted(out, key=lambda h: (len(h), h[::-1]))


def roots(ctx, f):
    """Distinct roots of f in ctx, sorted."""
    f = pmonic(ctx, trim(list(f)))
    if len(f) <= 1:
        return []
    if ctx.size <= 64:
        return [x for x in range(ctx.size) if peval(ctx, f, x) == 0]
    h = ppowmod(ctx, [0, 1], ctx.size, f)
    g = pgcd(ctx, f, psub(ctx, h, [0, 1]))
    lin = equal_degree(ctx, g, 1) if len(g) > 1 else []
    return sorted(ctx.neg(h[0]) for h in lin)


def is_irreducible_list(ctx, f) -> bool:
    f = trim(list(f))
    n = len(f) - 1
    if n < 1:
        raise FieldError("constant polynomial")
    if n == 1:
        return True
    f = pmonic(ctx, f)
    x = [0, 1]
    Q = ctx.size
    h = x
    powers = {}
    for i in range(1, n + 1):
        h = ppowmod(ctx, h, Q, f)
        powers[i] = h
    if psub(ctx, powers[n], x):
        return False
    for r in prime_factors(n):
        g = pgcd(ctx, f, psub(ctx, powers[n // r], x))
        if len(g) > 1:
            return False
    return True


# -- wrappers ---------------------------------------------------------------

class Poly:
    """Polynomial over a finite field, immutable."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldCtx, coeffs: Iterable[int] = ()):
        self.ctx = ctx
        self.c = tuple(trim(list(coeffs)))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [0, 1])

    @classmethod
    def const(cls, ctx, a: int):
        return cls(ctx, [a])

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def _other(self, o):
        if isinstance(o, Poly):
            if o.ctx != self.ctx:
                raise FieldError("context mismatch")
            return o.c
        if isinstance(o, int):
            return trim([self.ctx.from_int(o)])
        return None

    def __add__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return Poly(self.ctx, padd(self.ctx, self.c, oc))

    __radd__ = __add__

    def __sub__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return Poly(self.ctx, psub(self.ctx, self.c, oc))

    def __rsub__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return Poly(self.ctx, psub(self.ctx, oc, self.c))

    def __neg__(self):
        return Poly(self.ctx, pneg(self.ctx, self.c))

    def __mul__(self, o):
        oc = self._other(o)
        if oc is None:
            return NotImplemented
        return Poly(self.ctx, pmul(self.ctx, self.c, oc))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return Poly(self.ctx, ppow(self.ctx, list(self.c), e))

    def __divmod__(self, o):
        q, r = pdivmod(self.ctx, self.c, self._other(o))
        return Poly(self.ctx, q), Poly(self.ctx, r)

    def __floordiv__(self, o):
        return divmod(self, o)[0]

    def __mod__(self, o):
        return divmod(self, o)[1]

    def __eq__(self, o):
        if isinstance(o, Poly):
            return self.ctx == o.ctx and self.c == o.c
        if isinstance(o, int):
            return self.c == tuple(trim([self.ctx.from_int(o)]))
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.c))

    def __call__(self, x: int) -> int:
        return peval(self.ctx, self.c, x)

    def scale(self, a: int) -> "Poly":
        return Poly(self.ctx, pscale(self.ctx, a, self.c))

    def monic(self) -> "Poly":
        return Poly(self.ctx, pmonic(self.ctx, self.c))

    def derivative(self) -> "Poly":
        return Poly(self.ctx, pderiv(self.ctx, self.c))

    def __repr__(self):
        return format_poly(self.ctx, self.c, "x")


def format_poly(ctx, c, var="x") -> str:
    terms = []
    for i in range(len(c) - 1, -1, -1):
        a = c[i]
        if not a:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        s = ctx.format(a)
        if "+" in s:
            s = f"({s})"
        if not mono:
            terms.append(s)
        elif s == "1":
            terms.append(mono)
        else:
            terms.append(f"{s}*{mono}")
    return " + ".join(terms) if terms else "0"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    if a.ctx != b.ctx:
        raise FieldError("context mismatch")
    return Poly(a.ctx, pgcd(a.ctx, a.c, b.c))


def is_squarefree(f: Poly) -> bool:
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.degree == 0:
        return True
    return len(pgcd(f.ctx, f.c, pderiv(f.ctx, f.c))) == 1


def is_irreducible(f: Poly) -> bool:
    return is_irreducible_list(f.ctx, f.c)


class RatFunc:
    """Element of K(x): num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: FieldCtx, num: Sequence[int], den: Sequence[int] = (1,),
                 reduced: bool = False):
        self.ctx = ctx
        num, den = trim(list(num)), trim(list(den))
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not reduced:
            if not num:
                den = [1]
            else:
                g = pgcd(ctx, num, den)
                if len(g) > 1:
                    num = pdivmod(ctx, num, g)[0]
                    den = pdivmod(ctx, den, g)[0]
                if den[-1] != 1:
                    inv = ctx.inv(den[-1])
                    num, den = pscale(ctx, inv, num), pscale(ctx, inv, den)
        self.num = tuple(num)
        self.den = tuple(den)

    @classmethod
    def from_poly(cls, p: Poly):
        return cls(p.ctx, p.c, (1,), reduced=True)

    @classmethod
    def x(cls, ctx):
        return cls(ctx, [0, 1], [1], reduced=True)

    @classmethod
    def const(cls, ctx, a):
        return cls(ctx, [a], [1], reduced=True)

    def is_zero(self):
        return not self.num

    def _other(self, o):
        if isinstance(o, RatFunc):
            return o
        if isinstance(o, Poly):
            return RatFunc.from_poly(o)
        if isinstance(o, int):
            return RatFunc.const(self.ctx, self.ctx.from_int(o))
        return None

    def __add__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        if self.den == o.den:
            return RatFunc(ctx, padd(ctx, self.num, o.num), self.den)
        n = padd(ctx, pmul(ctx, self.num, o.den), pmul(ctx, o.num, self.den))
        return RatFunc(ctx, n, pmul(ctx, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ctx, pneg(self.ctx, self.num), self.den, reduced=True)

    def __sub__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        ctx = self.ctx
        return RatFunc(ctx, pmul(ctx, self.num, o.num), pmul(ctx, self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.ctx, self.den, self.num)

    def __truediv__(self, o):
        o = self._other(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        ctx = self.ctx
        return RatFunc(ctx, ppow(ctx, list(self.num), e), ppow(ctx, list(self.den), e),
                       reduced=True)

    def __eq__(self, o):
        o2 = self._other(o)
        if o2 is None:
            return NotImplemented
        return self.num == o2.num and self.den == o2.den

    def __hash__(self):
        return hash((self.num, self.den))

    def scale(self, a: int):
        return RatFunc(self.ctx, pscale(self.ctx, a, self.num), self.den, reduced=True)

    def derivative(self):
        ctx = self.ctx
        n = psub(ctx, pmul(ctx, pderiv(ctx, self.num), self.den),
                 pmul(ctx, self.num, pderiv(ctx, self.den)))
        return RatFunc(ctx, n, pmul(ctx, self.den, self.den))

    def map_coeffs(self, fn):
        """Apply a field automorphism coefficient-wise."""
        return RatFunc(self.ctx, pmap(self.num, fn), pmap(self.den, fn))

    def __repr__(self):
        n = format_poly(self.ctx, self.num)
        if self.den == (1,):
            return n
        return f"({n})/({format_poly(self.ctx, self.den)})"
