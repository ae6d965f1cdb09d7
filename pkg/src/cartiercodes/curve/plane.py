"""Smooth plane curves F(X, Y, Z) = 0 over a finite field K.

The function field is K(x, y) with x = X/Z, y = Y/Z.  We require the
affine equation f(x, y) = F(x, y, 1) to have a constant leading
coefficient in y, so that y is integral over K[x]; its y-degree is n.
Function elements are stored as (A_0 + A_1 y + ... + A_{n-1} y^{n-1}) / b
with A_j, b in K[x], b monic and gcd(A_0, ..., A_{n-1}, b) = 1.

Places are Galois orbits of geometric points.  Each place keeps a
canonical representative over the residue field E_r (see ExtFields); the
local parametrisation at that point comes from Newton iteration on the
curve equation in the affine chart where the point's last coordinate is 1.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from ..ff import FieldCtx, FieldError
from ..parse import parse_fraction, parse_poly
from ..polymat.linalg import kernel, solve
from ..polymat.mpoly import MPoly
from ..polymat.poly import (RatFunc, irreducible_factors, padd, pderiv, pdivmod, peval, pgcd,
                            pmul, pneg, ppow, pscale, pshift, psub, roots, trim)
from ..polymat.series import EXACT, LaurentSeries, PrecisionError
from .divisor import Differential, Divisor, Place, RRBasis
from .fields import ExtFields, normalize_point

MAX_PREC = 1 << 12


class CurveError(ValueError):
    pass


# -- polynomials in y with K[x] coefficients -------------------------------

def _ytrim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _yadd(K, a, b):
    n = max(len(a), len(b))
    return _ytrim([padd(K, a[i] if i < len(a) else [], b[i] if i < len(b) else [])
                   for i in range(n)])


def _ymul(K, a, b):
    if not a or not b:
        return []
    out = [[] for _ in range(len(a) + len(b) - 1)]
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] = padd(K, out[i + j], pmul(K, u, v))
    return _ytrim(out)


def _yscale_poly(K, c, a):
    return _ytrim([pmul(K, c, u) for u in a])


def _poly_det(K, M):
    """Determinant over K[x] by fraction-free (Bareiss) elimination."""
    M = [[list(e) for e in row] for row in M]
    n = len(M)
    if n == 0:
        return [1]
    prev = [1]
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    M[k] = [pneg(K, e) for e in M[k]]
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(K, pmul(K, M[i][j], M[k][k]), pmul(K, M[i][k], M[k][j]))
                q, r = pdivmod(K, num, prev)
                if r:  # pragma: no cover
                    raise ArithmeticError("inexact Bareiss division")
                M[i][j] = q
        prev = M[k][k]
    return M[n - 1][n - 1]


def _ratfunc_solve(K, M, rhs):
    """Solve M v = rhs over K(x), entries RatFunc; M square and invertible."""
    n = len(M)
    A = [list(row) + [rhs[i]] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not A[r][c].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        A[c], A[piv] = A[piv], A[c]
        inv = A[c][c].inverse()
        A[c] = [e * inv for e in A[c]]
        for r in range(n):
            if r != c and not A[r][c].is_zero():
                f = A[r][c]
                A[r] = [e - f * g for e, g in zip(A[r], A[c])]
    return [A[i][n] for i in range(n)]


def _ratfunc_inverse(K, M):
    n = len(M)
    cols = []
    for j in range(n):
        e = [RatFunc.const(K, 1 if i == j else 0) for i in range(n)]
        cols.append(_ratfunc_solve(K, M, e))
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# -- function field elements ----------------------------------------------

class FuncElem:
    """An element (sum_j A_j(x) y^j) / b(x) of the function field of a plane curve."""

    __slots__ = ("curve", "A", "b")

    def __init__(self, curve: "PlaneCurve", A, b=(1,), normalized: bool = False):
        self.curve = curve
        K = curve.ctx
        if not normalized:
            A = _ytrim([trim(list(c)) for c in A])
            b = trim(list(b))
            if not b:
                raise ZeroDivisionError("zero denominator")
            if len(A) > curve.n:
                A = curve._reduce(A)
            if not A:
                b = [1]
            else:
                g = b
                for c in A:
                    if len(g) == 1:
                        break
                    if c:
                        g = pgcd(K, g, c)
                if len(g) > 1:
                    A = [pdivmod(K, c, g)[0] for c in A]
                    b = pdivmod(K, b, g)[0]
                if b[-1] != 1:
                    inv = K.inv(b[-1])
                    A = [pscale(K, inv, c) for c in A]
                    b = pscale(K, inv, b)
        self.A = tuple(tuple(c) for c in A)
        self.b = tuple(b)

    # arithmetic -----------------------------------------------------------
    def _wrap(self, o):
        if isinstance(o, FuncElem):
            return o
        if isinstance(o, int):
            return self.curve.const(self.curve.ctx.from_int(o))
        return None

    def is_zero(self) -> bool:
        return not self.A

    def __add__(self, o):
        o = self._wrap(o)
        if o is None:
            return NotImplemented
        K = self.curve.ctx
        if self.b == o.b:
            return FuncElem(self.curve, _yadd(K, [list(c) for c in self.A],
                                              [list(c) for c in o.A]), self.b)
        a1 = _yscale_poly(K, list(o.b), [list(c) for c in self.A])
        a2 = _yscale_poly(K, list(self.b), [list(c) for c in o.A])
        return FuncElem(self.curve, _yadd(K, a1, a2), pmul(K, self.b, o.b))

    __radd__ = __add__

    def __neg__(self):
        K = self.curve.ctx
        return FuncElem(self.curve, [pneg(K, c) for c in self.A], self.b, normalized=True)

    def __sub__(self, o):
        o = self._wrap(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._wrap(o)
        if o is None:
            return NotImplemented
        K = self.curve.ctx
        a = _ymul(K, [list(c) for c in self.A], [list(c) for c in o.A])
        return FuncElem(self.curve, self.curve._reduce(a), pmul(K, self.b, o.b))

    __rmul__ = __mul__

    def scale(self, c: int) -> "FuncElem":
        K = self.curve.ctx
        if c == 0:
            return self.curve.zero()
        return FuncElem(self.curve, [pscale(K, c, a) for a in self.A], self.b, normalized=True)

    def inverse(self) -> "FuncElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        C = self.curve
        K = C.ctx
        n = C.n
        a = [list(c) for c in self.A]
        cols = []
        for j in range(n):
            col = C._reduce(_ymul(K, a, [[]] * j + [[1]]))
            cols.append([RatFunc(K, col[i] if i < len(col) else []) for i in range(n)])
        M = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [RatFunc.const(K, 1 if i == 0 else 0) for i in range(n)]
        v = _ratfunc_solve(K, M, rhs)
        return C.from_ratfuncs(v) * FuncElem(C, [list(self.b)])

    def __truediv__(self, o):
        o = self._wrap(o)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self.inverse() * o

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r = self.curve.one()
        a = self
        while e:
            if e & 1:
                r = r * a
            a = a * a
            e >>= 1
        return r

    def derivative(self) -> "FuncElem":
        """d/dx, using dy/dx = -f_x / f_y."""
        C = self.curve
        K = C.ctx
        A = [list(c) for c in self.A]
        dA = FuncElem(C, [pderiv(K, c) for c in A])
        part = FuncElem(C, [K.smul(j, 1) and pscale(K, K.smul(j, 1), A[j]) or []
                            for j in range(1, len(A))])
        num = dA + part * C.yprime()
        b = list(self.b)
        db = pderiv(K, b)
        top = num * FuncElem(C, [b]) - FuncElem(C, A) * FuncElem(C, [db])
        return top * FuncElem(C, [[1]], pmul(K, b, b))

    def __eq__(self, o):
        if isinstance(o, int):
            o = self._wrap(o)
        return isinstance(o, FuncElem) and self.A == o.A and self.b == o.b

    def __hash__(self):
        return hash((self.A, self.b))

    # representations ------------------------------------------------------
    def forms(self):
        """Homogeneous (numerator, denominator) of equal degree in X, Y, Z."""
        K = self.curve.ctx
        D = max([len(c) - 1 + j for j, c in enumerate(self.A) if c] + [len(self.b) - 1])
        N, B = {}, {}
        for j, c in enumerate(self.A):
            for i, v in enumerate(c):
                if v:
                    N[(i, j, D - i - j)] = v
        for i, v in enumerate(self.b):
            if v:
                B[(i, 0, D - i)] = v
        return MPoly(K, 3, N), MPoly(K, 3, B)

    def __repr__(self):
        K = self.curve.ctx
        terms = {}
        for j, c in enumerate(self.A):
            for i, v in enumerate(c):
                if v:
                    terms[(i, j)] = v
        num = MPoly(K, 2, terms).format(("x", "y"))
        if self.b == (1,):
            return num
        den = MPoly(K, 2, {(i, 0): v for i, v in enumerate(self.b) if v}).format(("x", "y"))
        return f"({num})/({den})"


# -- local parametrisations --------------------------------------------------

class _Local:
    """Newton parametrisation of the curve at a place's representative point."""

    def __init__(self, curve: "PlaneCurve", P: Place, alt: bool = False):
        self.curve = curve
        self.P = P
        E = P.field
        self.E = E
        emb = curve.fields.emb(P.degree)
        pt = P.point
        c = max(i for i in range(3) if pt[i])
        others = [i for i in range(3) if i != c]
        self.chart = c
        G = {}
        for e, coef in curve.F.terms.items():
            k = (e[others[0]], e[others[1]])
            G[k] = E.add(G.get(k, 0), emb(coef))
        u0, v0 = pt[others[0]], pt[others[1]]

        def partial(idx):
            s = 0
            for (a, b), coef in G.items():
                ex = (a, b)[idx]
                if ex:
                    term = E.smul(ex, coef)
                    term = E.mul(term, E.pow(u0, a - (idx == 0)))
                    term = E.mul(term, E.pow(v0, b - (idx == 1)))
                    s = E.add(s, term)
            return s
        gu, gv = partial(0), partial(1)
        if gu == 0 and gv == 0:
            raise CurveError(f"singular point {P}")
        # free variable = uniformizer (shifted); solved variable from Newton
        if gv != 0 and (gu == 0 or not alt):
            free, solved = 0, 1
        else:
            free, solved = 1, 0
        self.free_idx, self.solved_idx = others[free], others[solved]
        self.free0 = (u0, v0)[free]
        self.solved0 = (u0, v0)[solved]
        self.uniformizer = "xyz"[self.free_idx]
        by_solved = {}
        for ab, coef in G.items():
            fe, se = ab[free], ab[solved]
            row = by_solved.setdefault(se, {})
            row[fe] = E.add(row.get(fe, 0), coef)
        top = max(by_solved)
        self.G = []
        for s in range(top + 1):
            row = by_solved.get(s, {})
            poly = [0] * (max(row, default=-1) + 1)
            for fe, coef in row.items():
                poly[fe] = coef
            self.G.append(LaurentSeries.from_poly(E, pshift(E, trim(poly), self.free0)))
        self.dG = [self.G[s].scale(E.from_int(s)) for s in range(1, top + 1)]
        self._sol = LaurentSeries(E, 0, [self.solved0], 1)
        self._coords = {}
        self._powers = {}

    @staticmethod
    def _horner(polys, V, prec):
        acc = polys[-1].truncate(prec)
        for s in range(len(polys) - 2, -1, -1):
            acc = (acc * V + polys[s]).truncate(prec)
        return acc

    def solved(self, W: int) -> LaurentSeries:
        V = self._sol
        if V.prec >= W:
            return V.truncate(W)
        E = self.E
        prec = V.prec
        while prec < W:
            prec = min(2 * prec, W)
            V = LaurentSeries(E, V.start if V.c else 0, V.c, prec)
            g = self._horner(self.G, V, prec)
            dg = self._horner(self.dG, V, prec)
            V = (V - g * dg.inverse()).truncate(prec)
        self._sol = V
        return V

    def coords(self, W: int):
        if W in self._coords:
            return self._coords[W]
        E = self.E
        out = [None, None, None]
        out[self.chart] = LaurentSeries.const(E, 1)
        out[self.free_idx] = LaurentSeries(E, 0, [self.free0, 1], EXACT)
        out[self.solved_idx] = self.solved(W)
        out = tuple(s.truncate(W) for s in out)
        self._coords[W] = out
        return out

    def powers(self, W: int, m: int):
        key = (W, m)
        if key not in self._powers:
            cs = self.coords(W)
            tabs = []
            for s in cs:
                tab = [LaurentSeries.const(self.E, 1, W)]
                for _ in range(m):
                    tab.append((tab[-1] * s).truncate(W))
                tabs.append(tab)
            self._powers = {key: tabs}
        return self._powers[key]

    def form_series(self, A: MPoly, W: int) -> LaurentSeries:
        E = self.E
        emb = self.curve.fields.emb(self.P.degree)
        # group by exponent of the solved variable, shift the free variable
        by_solved = {}
        for e, coef in A.terms.items():
            row = by_solved.setdefault(e[self.solved_idx], {})
            fe = e[self.free_idx]
            row[fe] = E.add(row.get(fe, 0), emb(coef))
        if not by_solved:
            return LaurentSeries.zero(E, W)
        top = max(by_solved)
        polys = []
        for s in range(top + 1):
            row = by_solved.get(s, {})
            poly = [0] * (max(row, default=-1) + 1)
            for fe, coef in row.items():
                poly[fe] = coef
            polys.append(LaurentSeries.from_poly(E, pshift(E, trim(poly), self.free0)))
        V = self.solved(W)
        return self._horner(polys, V, W)

    def form_valuation(self, A: MPoly) -> int:
        bound = max(1, A.total_degree()) * self.curve.d + 1
        W = 8
        while True:
            s = self.form_series(A, W)
            if not s.is_zero_to_prec():
                return s.start
            if W > bound:
                raise CurveError("form vanishes identically on the curve")
            W = min(2 * W, bound + 1)

    def dx_numerator(self, W: int) -> LaurentSeries:
        """Series of X' Z - X Z' (precision W - 1); dx = that / Z^2 dt."""
        sX, _, sZ = self.coords(W)
        return sX.derivative() * sZ - sX * sZ.derivative()


class PlaneCurve:
    """A smooth projective plane curve, validated at construction."""

    def __init__(self, ctx: FieldCtx, F: MPoly, name: str = ""):
        if F.nvars != 3 or F.is_zero() or not F.is_homogeneous():
            raise CurveError("curve equation must be a nonzero homogeneous form in x, y, z")
        self.ctx = ctx
        self.F = F
        self.d = F.total_degree()
        if self.d < 2:
            raise CurveError("use the projective line for degree-1 curves")
        self.genus = (self.d - 1) * (self.d - 2) // 2
        self.name = name or F.format()
        self.fields = ExtFields(ctx)
        K = ctx
        # affine equation f(x, y) = F(x, y, 1), as a polynomial in y over K[x]
        n = F.degree_in(1)
        f = [[] for _ in range(n + 1)]
        for (a, b, _c), coef in F.terms.items():
            cur = f[b] + [0] * max(0, a + 1 - len(f[b]))
            cur[a] = K.add(cur[a], coef)
            f[b] = trim(cur)
        if n < 1 or len(f[n]) != 1:
            raise CurveError("affine equation F(x, y, 1) must have a constant leading "
                             "coefficient in y; permute the coordinates")
        self.n = n
        self.f = f
        self._lead_inv = K.inv(f[n][0])
        self.FX, self.FY, self.FZ = F.deriv(0), F.deriv(1), F.deriv(2)
        self._local = {}
        self._local_alt = {}
        self._places = {}
        self._yprime = None
        self._K0 = None
        self._rational = None
        self._cartier_rows = None
        self._check_smooth()

    def __repr__(self):
        return f"PlaneCurve({self.F.format()} over F_{self.ctx.size})"

    def text(self) -> str:
        return self.ctx.text() + "\ncurve poly=" + self.F.format() + "\n"

    # y-polynomial helpers -------------------------------------------------
    def _reduce(self, a):
        """Reduce a polynomial in y (coefficients in K[x]) modulo f."""
        K = self.ctx
        a = [list(c) for c in a]
        n = self.n
        f = self.f
        for m in range(len(a) - 1, n - 1, -1):
            top = a[m]
            if not top:
                continue
            t = pscale(K, self._lead_inv, top)
            for j in range(n):
                if f[j]:
                    a[m - n + j] = psub(K, a[m - n + j], pmul(K, t, f[j]))
            a[m] = []
        return _ytrim(a[:n])

    def _norm(self, a) -> list:
        """N_{K(x,y)/K(x)}(a) for a polynomial a in y over K[x] (already reduced)."""
        K = self.ctx
        n = self.n
        cols = []
        for j in range(n):
            col = self._reduce(_ymul(K, a, [[]] * j + [[1]]))
            cols.append([col[i] if i < len(col) else [] for i in range(n)])
        return _poly_det(K, [[cols[j][i] for j in range(n)] for i in range(n)])

    def _affine(self, A: MPoly):
        """A(x, y, 1) as a polynomial in y over K[x] (not reduced)."""
        K = self.ctx
        out = []
        for (a, b, _c), coef in A.terms.items():
            while len(out) <= b:
                out.append([])
            cur = out[b] + [0] * max(0, a + 1 - len(out[b]))
            cur[a] = K.add(cur[a], coef)
            out[b] = trim(cur)
        return _ytrim(out)

    # smoothness -----------------------------------------------------------
    def _check_smooth(self):
        K = self.ctx
        F0 = {(a, b): c for (a, b, cz), c in self.F.terms.items() if cz == 0}
        if not F0:
            raise CurveError("the line z = 0 is a component: curve is reducible")
        for P in self.points_at_infinity():
            pt = P.point
            E = P.field
            emb = self.fields.emb(P.degree)
            if all(D.evaluate(pt, E, emb) == 0 for D in (self.FX, self.FY, self.FZ)):
                raise CurveError(f"singular point at infinity {P}")
        fy = self._reduce(self._affine(self.FY))
        if not fy:
            raise CurveError("f_y vanishes on the curve: y is not separable or F is reducible")
        R = self._norm(fy)
        if not R:
            raise CurveError("f_y vanishes on a component of the curve")
        fx = self._affine(self.FX)
        fyy = self._affine(self.FY)
        for phi in irreducible_factors(K, R):
            k = len(phi) - 1
            Ek, ek = self.fields.get(k)
            x0 = min(roots(Ek, [ek(c) for c in phi]))
            g = self._spec_y(self.f, x0, k)
            for other in (fyy, fx):
                g = pgcd(Ek, g, self._spec_y(other, x0, k))
            if len(g) > 1:
                raise CurveError("curve has a singular point")

    def _spec_y(self, a, x0, k):
        """a(x0, y) in E_k[y] for a polynomial in y over K[x]."""
        Ek, ek = self.fields.get(k)
        return trim([peval(Ek, [ek(c) for c in coeff], x0) for coeff in a])

    # function field -------------------------------------------------------
    def zero(self):
        return FuncElem(self, [], normalized=False)

    def one(self):
        return FuncElem(self, [[1]])

    def const(self, a: int):
        return FuncElem(self, [[a]] if a else [])

    def x(self):
        return FuncElem(self, [[0, 1]])

    def y(self):
        return FuncElem(self, [[], [1]])

    def from_bivariate(self, P: MPoly, den: Optional[MPoly] = None) -> FuncElem:
        """Function from polynomials in (x, y) (or forms in x, y, z with z = 1)."""
        def conv(M):
            if M.nvars == 2:
                M = MPoly(self.ctx, 3, {(a, b, 0): c for (a, b), c in M.terms.items()})
            return self._reduce(self._affine(M))
        num = FuncElem(self, conv(P))
        if den is None:
            return num
        return num / FuncElem(self, conv(den))

    def from_ratfuncs(self, coeffs: Sequence[RatFunc]) -> FuncElem:
        """sum_j coeffs[j] * y^j with coefficients in K(x)."""
        K = self.ctx
        den = [1]
        for c in coeffs:
            if not c.is_zero():
                g = pgcd(K, den, list(c.den))
                den = pmul(K, den, pdivmod(K, list(c.den), g)[0])
        A = []
        for c in coeffs:
            if c.is_zero():
                A.append([])
            else:
                A.append(pmul(K, list(c.num), pdivmod(K, den, list(c.den))[0]))
        return FuncElem(self, A, den)

    def func(self, text: str) -> FuncElem:
        n, d = parse_fraction(text, self.ctx, ("x", "y"))
        return self.from_bivariate(n, d)

    def format_func(self, h: FuncElem) -> str:
        return repr(h)

    def yprime(self) -> FuncElem:
        if self._yprime is None:
            K = self.ctx
            fx = FuncElem(self, [pderiv(K, c) for c in self.f])
            fy = FuncElem(self, [pscale(K, K.smul(j, 1), self.f[j]) for j in range(1, self.n + 1)])
            self._yprime = -(fx / fy)
        return self._yprime

    def fy(self) -> FuncElem:
        K = self.ctx
        return FuncElem(self, [pscale(K, K.smul(j, 1), self.f[j]) for j in range(1, self.n + 1)])

    def differential(self, h) -> Differential:
        return Differential(self, h)

    def exact(self, h: FuncElem) -> Differential:
        return Differential(self, h.derivative())

    def random_function(self, rng: random.Random, deg: int = 2, den: bool = True) -> FuncElem:
        K = self.ctx

        def rpoly():
            A = [[rng.randrange(K.size) for _ in range(rng.randint(0, deg + 1))]
                 for _ in range(rng.randint(1, self.n))]
            return FuncElem(self, A)
        while True:
            h = rpoly()
            if h.is_zero():
                continue
            if den:
                g = rpoly()
                if g.is_zero():
                    continue
                return h / g
            return h

    # places ---------------------------------------------------------------
    def _make_place(self, pt, s: int) -> Place:
        Es = self.fields.field(s)
        pt = normalize_point(Es, pt)
        r, pt = self.fields.descend_point(pt, s)
        Er = self.fields.field(r)
        key = min(self.fields.orbit(Er, pt))
        if (r, key) in self._places:
            return self._places[(r, key)]
        if self.F.evaluate(key, Er, self.fields.emb(r)) != 0:
            raise CurveError("point is not on the curve")
        P = Place(r, key, key, Er)
        P.label = self._label(P)
        self._places[(r, key)] = P
        return P

    def _label(self, P: Place) -> str:
        K = self.ctx
        if P.degree == 1:
            return "(" + ":".join(K.format(c) for c in P.point) + ")"
        return self.ideal_text(P)

    def ideal_pair(self, P: Place):
        """Two forms generating the ideal of a place of degree >= 2, when a coordinate
        ratio generates its residue field; otherwise None."""
        K = self.ctx
        r = P.degree
        E, emb = self.fields.get(r)
        X, Y, Z = P.point
        names = [(1, 2, 0), (0, 2, 1)] if Z else [(0, 1, 2)]
        for gen_i, den_i, other_i in names:
            den = P.point[den_i]
            g0 = E.div(P.point[gen_i], den)
            mp = self.fields.minpoly(r, g0)
            if len(mp) - 1 != r:
                continue
            o0 = E.div(P.point[other_i], den)
            # o0 = sum c_i g0^i with c_i in K
            pw = [1]
            for _ in range(r - 1):
                pw.append(E.mul(pw[-1], g0))
            rows = [[emb.coords(v)[j] for v in pw] for j in range(r)]
            sol = solve(K, rows, emb.coords(o0))
            if sol is None:  # pragma: no cover
                continue
            g1 = MPoly(K, 3, {})
            for i, c in enumerate(mp):
                e = [0, 0, 0]
                e[gen_i] = i
                e[den_i] = r - i
                g1 = g1 + MPoly(K, 3, {tuple(e): c})
            e = [0, 0, 0]
            e[other_i] = 1
            e[den_i] = max(r - 2, 0)
            g2 = MPoly(K, 3, {tuple(e): 1}) if r >= 2 else MPoly(K, 3, {})
            for i, c in enumerate(sol):
                e = [0, 0, 0]
                e[gen_i] = i
                e[den_i] = r - 1 - i
                g2 = g2 - MPoly(K, 3, {tuple(e): c})
            return g1, g2
        return None

    def ideal_text(self, P: Place) -> str:
        pair = self.ideal_pair(P)
        if pair is None:
            E = P.field
            return "[" + ":".join(E.format(c) for c in P.point) + f"]_F{E.size}"
        return "<" + ", ".join(g.format(power_style=True) for g in pair) + ">"

    def points_at_infinity(self) -> list:
        K = self.ctx
        out = []
        F0 = {(a, b): c for (a, b, cz), c in self.F.terms.items() if cz == 0}
        if F0.get((0, self.d), 0) == 0:
            out.append(self._make_place((0, 1, 0), 1))
        # (1 : y : 0) with F(1, y, 0) = 0
        g = [0] * (self.d + 1)
        for (a, b), c in F0.items():
            g[b] = K.add(g[b], c)
        g = trim(g)
        if len(g) > 1:
            for phi in irreducible_factors(K, g):
                k = len(phi) - 1
                Ek, ek = self.fields.get(k)
                y0 = min(roots(Ek, [ek(c) for c in phi]))
                out.append(self._make_place((1, y0, 0), k))
        return sorted(set(out))

    def places_of_degree(self, r: int) -> list:
        if r == 1 and self._rational is not None:
            return list(self._rational)
        E, emb = self.fields.get(r)
        fE = [[emb(c) for c in coeff] for coeff in self.f]
        found = {}
        for x0 in range(E.size):
            poly = trim([peval(E, c, x0) for c in fE])
            for y0 in roots(E, poly):
                if len(self.fields.orbit(E, (x0, y0, 1))) != r:
                    continue
                P = self._make_place((x0, y0, 1), r)
                found[P] = True
        for P in self.points_at_infinity():
            if P.degree == r:
                found[P] = True
        out = sorted(found)
        if r == 1:
            self._rational = out
        return list(out)

    def rational_points(self) -> list:
        return self.places_of_degree(1)

    def parse_place(self, text: str) -> Place:
        K = self.ctx
        s = text.strip()
        if s.startswith("("):
            pt = tuple(K.parse(t) for t in s.strip("()").split(":"))
            if len(pt) != 3:
                raise CurveError(f"expected three coordinates in {text!r}")
            return self._make_place(pt, 1)
        if s.startswith("<") and s.endswith(">"):
            gens = [parse_poly(t, K) for t in _split_top(s[1:-1])]
            return self.place_from_ideal(gens)
        raise CurveError(f"cannot parse place {text!r}")

    def place_from_ideal(self, gens: Sequence[MPoly]) -> Place:
        gens = [_homogenize(g) for g in gens if not g.is_zero()]
        base = None
        for g in gens:
            try:
                base = self.form_divisor(g)
                break
            except CurveError:
                continue
        if base is None:
            raise CurveError("ideal generators vanish on the whole curve")
        hits = []
        for P in base.support():
            emb = self.fields.emb(P.degree)
            if all(g.evaluate(P.point, P.field, emb) == 0 for g in gens):
                hits.append(P)
        if len(hits) != 1:
            raise CurveError(f"ideal cuts out {len(hits)} places, expected exactly one")
        return hits[0]

    def format_place(self, P: Place) -> str:
        return P.label

    # local computations ---------------------------------------------------
    def local(self, P: Place, alt: bool = False) -> _Local:
        cache = self._local_alt if alt else self._local
        L = cache.get(P)
        if L is None:
            L = _Local(self, P, alt)
            cache[P] = L
        return L

    def form_valuation(self, A: MPoly, P: Place) -> int:
        return self.local(P).form_valuation(A)

    def valuation(self, h: FuncElem, P: Place) -> int:
        if h.is_zero():
            raise ValueError("valuation of zero")
        N, B = h.forms()
        L = self.local(P)
        return L.form_valuation(N) - L.form_valuation(B)

    def local_expansion(self, h: FuncElem, P: Place, prec: int, alt: bool = False):
        """Laurent series of h in the place's uniformizer, with prec relative terms."""
        if h.is_zero():
            raise ValueError("expansion of zero")
        L = self.local(P, alt)
        N, B = h.forms()
        vN, vB = L.form_valuation(N), L.form_valuation(B)
        W = max(vN, vB) + prec
        return L.form_series(N, W) * L.form_series(B, W).inverse()

    def dx_valuation(self, P: Place) -> int:
        L = self.local(P)
        vZ = L.form_valuation(MPoly.var(self.ctx, 3, 2))
        W = 8
        while True:
            s = L.dx_numerator(W)
            if not s.is_zero_to_prec():
                return s.start - 2 * vZ
            if W >= MAX_PREC:
                raise PrecisionError("dx expansion exceeded the precision cap")
            W *= 2

    def dx_series(self, P: Place, prec: int, alt: bool = False) -> LaurentSeries:
        L = self.local(P, alt)
        Zf = MPoly.var(self.ctx, 3, 2)
        vZ = L.form_valuation(Zf)
        W = 8
        while True:
            s = L.dx_numerator(W)
            if not s.is_zero_to_prec() and s.prec - s.start >= prec:
                break
            if not s.is_zero_to_prec():
                W = max(W, s.start + prec + 2)
            elif W >= MAX_PREC:
                raise PrecisionError("dx expansion exceeded the precision cap")
            else:
                W *= 2
        Zs = L.form_series(Zf, vZ + prec + 1)
        return s * (Zs * Zs).inverse()

    def diff_valuation(self, w: Differential, P: Place) -> int:
        return self.valuation(w.f, P) + self.dx_valuation(P)

    def _residue_rep(self, w: Differential, P: Place, alt: bool = False) -> int:
        if w.is_zero():
            return 0
        v = self.diff_valuation(w, P)
        if v >= 0:
            return 0
        s = self.local_expansion(w.f, P, -v, alt) * self.dx_series(P, -v, alt)
        return s.coefficient(-1)

    def residue(self, w: Differential, P: Place, alt: bool = False) -> int:
        if P.degree != 1:
            raise ValueError("residues are only defined here at rational places")
        return self._residue_rep(w, P, alt)

    def residue_trace(self, w: Differential, P: Place) -> int:
        return self.fields.trace(P.degree, self._residue_rep(w, P))

    # divisors ---------------------------------------------------------------
    def form_divisor(self, A: MPoly) -> Divisor:
        """Intersection divisor of the curve with the form A = 0."""
        K = self.ctx
        if not A.is_homogeneous():
            raise CurveError("form must be homogeneous")
        cands = set()
        for P in self.points_at_infinity():
            if A.evaluate(P.point, P.field, self.fields.emb(P.degree)) == 0:
                cands.add(P)
        a = self._reduce(self._affine(A))
        if not a:
            raise CurveError("form vanishes on the curve")
        R = a[0] if len(a) == 1 else self._norm(a)
        if len(R) > 1:
            for phi in irreducible_factors(K, R):
                k = len(phi) - 1
                Ek, ek = self.fields.get(k)
                x0 = min(roots(Ek, [ek(c) for c in phi]))
                g = pgcd(Ek, self._spec_y(self.f, x0, k), self._spec_y(a, x0, k))
                if len(g) <= 1:
                    continue
                for psi in irreducible_factors(Ek, g):
                    s = len(psi) - 1
                    iota = self.fields.between(k, k * s)
                    Eks = self.fields.field(k * s)
                    y0 = min(roots(Eks, [iota(c) for c in psi]))
                    cands.add(self._make_place((iota(x0), y0, 1), k * s))
        out = {}
        for P in cands:
            v = self.form_valuation(A, P)
            if v:
                out[P] = v
        return Divisor(out)

    def divisor_of(self, h: FuncElem) -> Divisor:
        if h.is_zero():
            raise ValueError("divisor of zero")
        N, B = h.forms()
        return self.form_divisor(N) - self.form_divisor(B)

    def canonical_divisor(self) -> Divisor:
        """div(dx), from the valuations of dx at the zeros of F_Y and at infinity."""
        if self._K0 is None:
            cands = set(self.form_divisor(self.FY).support()) | set(self.points_at_infinity())
            out = {}
            for P in sorted(cands):
                v = self.dx_valuation(P)
                if v:
                    out[P] = v
            K0 = Divisor(out)
            if K0.degree() != 2 * self.genus - 2:
                raise CurveError(f"canonical divisor has degree {K0.degree()}, "
                                 f"expected {2 * self.genus - 2}")
            self._K0 = K0
        return self._K0

    def diff_divisor(self, w: Differential) -> Divisor:
        return self.divisor_of(w.f) + self.canonical_divisor()

    # Riemann-Roch -----------------------------------------------------------
    def _normal_monomials(self, m: int):
        lead = max(self.F.terms, key=lambda e: (e[1], e[0], e[2]))
        out = []
        for a in range(m, -1, -1):
            for b in range(m - a, -1, -1):
                e = (a, b, m - a - b)
                if not all(x >= y for x, y in zip(e, lead)):
                    out.append(e)
        return out

    def rr_basis(self, G: Divisor) -> RRBasis:
        """Basis of L(G) as quotients B/A of forms of equal degree."""
        K = self.ctx
        # denominator A = a(X/Z) Z^deg(a) * Z^k with div(A) >= G^+
        exps = {}
        k = 0
        for P, n in G.positive_part().items():
            if P.point[2] == 0:
                k = max(k, n)
            else:
                phi = tuple(self.fields.minpoly(P.degree, P.point[0]))
                exps[phi] = max(exps.get(phi, 0), n)
        a = [1]
        for phi, e in sorted(exps.items()):
            a = pmul(K, a, ppow(K, list(phi), e))
        m = len(a) - 1 + k
        A = MPoly(K, 3, {(i, 0, m - i): c for i, c in enumerate(a) if c})
        divA = self.form_divisor(A) if m else Divisor()
        monos = self._normal_monomials(m)
        rows = []
        places = sorted(set(divA.support()) | set(G.support()))
        for P in places:
            need = divA[P] - G[P]
            if need <= 0:
                continue
            L = self.local(P)
            emb = self.fields.emb(P.degree)
            pw = L.powers(need, m)
            block = []
            for e in monos:
                s = (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]).truncate(need)
                coeffs = [s.coefficient(t) for t in range(need)]
                block.append([emb.coords(c) for c in coeffs])
            for t in range(need):
                for j in range(P.degree):
                    rows.append([block[i][t][j] for i in range(len(monos))])
        ker = kernel(K, rows, len(monos)) if rows else \
            [[1 if i == j else 0 for j in range(len(monos))] for i in range(len(monos))]
        basis = []
        for v in ker:
            B = MPoly(K, 3, {e: c for e, c in zip(monos, v) if c})
            basis.append(FuncElem(self, self._reduce(self._affine(B)), a))
        return RRBasis(G, basis, ambient_degree=m)

    def h0(self, G: Divisor) -> int:
        return len(self.rr_basis(G).basis)

    def h1(self, G: Divisor) -> int:
        return self.h0(self.canonical_divisor() - G)

    def omega_basis(self, A: Divisor) -> RRBasis:
        L = self.rr_basis(self.canonical_divisor() - A)
        return RRBasis(A, [Differential(self, h) for h in L.basis], L.ambient_degree,
                       kind="differentials")

    # Cartier operator -------------------------------------------------------
    def _cartier_setup(self):
        """Rows r = p-1 of the inverse transition matrix from {x^i y^j} to {x^r y^(pj)}."""
        if self._cartier_rows is not None:
            return self._cartier_rows
        K = self.ctx
        p, n = K.p, self.n

        def idx(i, j):
            return j * p + i

        size = p * n
        M = [[RatFunc.const(K, 0) for _ in range(size)] for _ in range(size)]
        for j in range(n):
            ypj = self._reduce([[]] * (p * j) + [[1]])
            for r in range(p):
                col = idx(r, j)
                for s, E_js in enumerate(ypj):
                    poly = [0] * r + list(E_js)
                    for i in range(p):
                        part = trim(poly[i::p])
                        if part:
                            M[idx(i, s)][col] = RatFunc(K, part)
        Minv = _ratfunc_inverse(K, M)
        self._cartier_rows = [Minv[idx(p - 1, j)] for j in range(n)]
        return self._cartier_rows

    def _cartier_poly(self, g) -> FuncElem:
        """C(g dx) for g a polynomial in y over K[x] of y-degree < n."""
        K = self.ctx
        p, n = K.p, self.n
        rows = self._cartier_setup()
        vec = []
        for j in range(n):
            Gs = list(g[j]) if j < len(g) else []
            for i in range(p):
                vec.append(RatFunc(K, trim(Gs[i::p])))
        out = []
        for row in rows:
            acc = RatFunc.const(K, 0)
            for c, v in zip(row, vec):
                if not c.is_zero() and not v.is_zero():
                    acc = acc + c * v
            out.append(acc.map_coeffs(K.pth_root))
        return self.from_ratfuncs(out)

    def cartier(self, w: Differential) -> Differential:
        """C(h dx) for h = A/b: write h = A b^(p-1) / b^p, so C = C(A b^(p-1) dx) / b."""
        K = self.ctx
        h = w.f
        if h.is_zero():
            return w
        bp1 = ppow(K, list(h.b), K.p - 1)
        g = [pmul(K, list(c), bp1) for c in h.A]
        res = self._cartier_poly(g) * FuncElem(self, [[1]], h.b)
        return Differential(self, res)

    def cartier_formula(self, w: Differential) -> Differential:
        """Independent route: C(g dx/f_y) = (D(f^(p-1) g))^(1/p) dx/f_y, where D extracts
        the coefficients of x^(ap+p-1) y^(bp+p-1)."""
        K = self.ctx
        p = K.p
        h = w.f
        if h.is_zero():
            return w
        fy = [pscale(K, K.smul(j, 1), self.f[j]) for j in range(1, self.n + 1)]
        bp1 = ppow(K, list(h.b), p - 1)
        g = _ymul(K, [pmul(K, list(c), bp1) for c in h.A], fy)
        fp = [[1]]
        for _ in range(p - 1):
            fp = _ymul(K, fp, self.f)
        big = _ymul(K, fp, g)
        out = []
        for j in range(p - 1, len(big), p):
            coeff = big[j]
            out.append(trim([K.pth_root(c) for c in coeff[p - 1::p]]))
        H = FuncElem(self, self._reduce(_ytrim(out)))
        res = H / self.fy() * FuncElem(self, [[1]], h.b)
        return Differential(self, res)


def _split_top(s: str):
    """Split on commas not nested in parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return parts


def _homogenize(g: MPoly) -> MPoly:
    D = g.total_degree()
    return MPoly(g.ctx, 3, {(a, b, D - a - b): c for (a, b, _z), c in g.terms.items()}) \
        if not g.is_homogeneous() else g
