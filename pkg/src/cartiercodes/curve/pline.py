"""The projective line over a finite field, as the rational function field K(x).

Functions are :class:`RatFunc`; valuations come straight from factoring
numerators and denominators, so this model shares no code with the plane
curve machinery and can serve as an independent genus-0 reference.
"""

from __future__ import annotations

import random
from ..ff import FieldCtx, FieldError
from ..parse import parse_fraction
from ..polymat.poly import (RatFunc, format_poly, irreducible_factors, pdivmod, pmul,
                            pmonic, ppow, pshift, roots)
from ..polymat.series import LaurentSeries
from .divisor import Differential, Divisor, Place, RRBasis
from .fields import ExtFields


class ProjectiveLine:
    genus = 0

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.fields = ExtFields(ctx)
        self._inf = Place(1, (1, 0), (1, 0), ctx, "(1:0)", extra=None)
        self.name = "P1"

    def __repr__(self):
        return f"ProjectiveLine(F_{self.ctx.size})"

    def text(self) -> str:
        return self.ctx.text() + "\ncurve P1\n"

    # functions ------------------------------------------------------------
    def x(self) -> RatFunc:
        return RatFunc.x(self.ctx)

    def one(self) -> RatFunc:
        return RatFunc.const(self.ctx, 1)

    def const(self, a: int) -> RatFunc:
        return RatFunc.const(self.ctx, a)

    def func(self, text: str) -> RatFunc:
        n, d = parse_fraction(text, self.ctx, ("x",))

        def univ(mp):
            c = [0] * (max((e[0] for e in mp.terms), default=-1) + 1)
            for e, v in mp.terms.items():
                c[e[0]] = v
            return c
        return RatFunc(self.ctx, univ(n), univ(d))

    def func_from_poly(self, coeffs, den=(1,)) -> RatFunc:
        return RatFunc(self.ctx, coeffs, den)

    def format_func(self, h: RatFunc) -> str:
        return repr(h)

    def differential(self, h) -> Differential:
        return Differential(self, h)

    def exact(self, h) -> Differential:
        """dh = h' dx."""
        return Differential(self, h.derivative())

    def random_function(self, rng: random.Random, deg: int = 3) -> RatFunc:
        K = self.ctx
        while True:
            n = [rng.randrange(K.size) for _ in range(rng.randint(1, deg + 1))]
            d = [rng.randrange(K.size) for _ in range(rng.randint(0, deg))] + [1]
            if any(n):
                return RatFunc(K, n, d)

    # places ---------------------------------------------------------------
    @property
    def infinity(self) -> Place:
        return self._inf

    def place_at(self, a: int) -> Place:
        return Place(1, (a, 1), (a, 1), self.ctx, f"({self.ctx.format(a)}:1)",
                     extra=(self.ctx.neg(a), 1))

    def place_of_poly(self, phi) -> Place:
        """Place of a monic irreducible polynomial over K."""
        phi = pmonic(self.ctx, phi)
        r = len(phi) - 1
        if r == 1:
            return self.place_at(self.ctx.neg(phi[0]))
        E, emb = self.fields.get(r)
        phiE = [emb(c) for c in phi]
        rts = roots(E, phiE)
        if len(rts) != r:
            raise FieldError("polynomial is not irreducible of the claimed degree")
        a = min(rts)
        return Place(r, (a, 1), (a, 1), E, f"<{format_poly(self.ctx, phi)}>", extra=tuple(phi))

    def rational_points(self) -> list:
        return [self.place_at(a) for a in range(self.ctx.size)] + [self._inf]

    def places_of_degree(self, r: int) -> list:
        if r == 1:
            return self.rational_points()
        E, emb = self.fields.get(r)
        seen = set()
        out = []
        for a in range(E.size):
            orb = self.fields.orbit(E, (a,))
            if len(orb) != r:
                continue
            key = min(orb)
            if key in seen:
                continue
            seen.add(key)
            out.append(self.place_of_poly(self.fields.minpoly(r, a)))
        return sorted(out)

    def _phi(self, P: Place):
        if P == self._inf:
            return None
        return list(P.extra) if P.extra is not None else [self.ctx.neg(P.key[0]), 1]

    def parse_place(self, text: str) -> Place:
        s = text.strip()
        K = self.ctx
        if s.startswith("("):
            a, b = [K.parse(t) for t in s.strip("()").split(":")]
            if b == 0:
                return self._inf
            return self.place_at(K.div(a, b))
        if s.startswith("<"):
            body = s.strip("<>").strip()
            h = self.func(body)
            if h.den != (1,):
                raise FieldError("place generator must be a polynomial")
            return self.place_of_poly(list(h.num))
        raise FieldError(f"cannot parse place {text!r}")

    def format_place(self, P: Place) -> str:
        return P.label

    # valuations -----------------------------------------------------------
    def _mult(self, poly, phi) -> int:
        k = 0
        poly = list(poly)
        while True:
            q, r = pdivmod(self.ctx, poly, phi)
            if r:
                return k
            poly = q
            k += 1

    def valuation(self, h: RatFunc, P: Place) -> int:
        if h.is_zero():
            raise ValueError("valuation of zero")
        phi = self._phi(P)
        if phi is None:
            return (len(h.den) - 1) - (len(h.num) - 1)
        return self._mult(h.num, phi) - self._mult(h.den, phi)

    def divisor_of(self, h: RatFunc) -> Divisor:
        if h.is_zero():
            raise ValueError("divisor of zero")
        d = {}
        for part, sign in ((h.num, 1), (h.den, -1)):
            for phi in irreducible_factors(self.ctx, list(part)):
                P = self.place_of_poly(phi)
                d[P] = d.get(P, 0) + sign * self._mult(part, phi)
        v = (len(h.den) - 1) - (len(h.num) - 1)
        if v:
            d[self._inf] = v
        return Divisor(d)

    def canonical_divisor(self) -> Divisor:
        return Divisor({self._inf: -2})

    def diff_valuation(self, w: Differential, P: Place) -> int:
        return self.valuation(w.f, P) + (-2 if P == self._inf else 0)

    def diff_divisor(self, w: Differential) -> Divisor:
        return self.divisor_of(w.f) + self.canonical_divisor()

    # local expansions -----------------------------------------------------
    def local_expansion(self, h: RatFunc, P: Place, prec: int) -> LaurentSeries:
        """Series of h in the uniformizer x - a (or 1/x at infinity), prec relative terms."""
        E = P.field
        emb = self.fields.emb(P.degree)
        num = [emb(c) for c in h.num]
        den = [emb(c) for c in h.den]
        if P == self._inf:
            dn, dd = len(num) - 1, len(den) - 1
            N = LaurentSeries(E, 0, list(reversed(num)), 1 << 40)
            D = LaurentSeries(E, 0, list(reversed(den)), 1 << 40)
            s = dd - dn
        else:
            a = P.point[0]
            N = LaurentSeries.from_poly(E, pshift(E, num, a))
            D = LaurentSeries.from_poly(E, pshift(E, den, a))
            s = 0
        vd = D.valuation()
        return (N * D.truncate(vd + prec).inverse()).shift(s)

    def dx_series(self, P: Place, prec: int) -> LaurentSeries:
        E = P.field
        if P == self._inf:
            return LaurentSeries.monomial(E, -2, E.neg(1))
        return LaurentSeries.const(E, 1)

    def _residue_rep(self, w: Differential, P: Place) -> int:
        if w.is_zero():
            return 0
        v = self.diff_valuation(w, P)
        if v >= 0:
            return 0
        s = self.local_expansion(w.f, P, -v) * self.dx_series(P, -v)
        return s.coefficient(-1)

    def residue(self, w: Differential, P: Place) -> int:
        if P.degree != 1:
            raise ValueError("residues are only defined here at rational places")
        return self._residue_rep(w, P)

    def residue_trace(self, w: Differential, P: Place) -> int:
        """Trace to K of the residue at the representative point of P."""
        return self.fields.trace(P.degree, self._residue_rep(w, P))

    # Riemann-Roch ---------------------------------------------------------
    def rr_basis(self, G: Divisor) -> RRBasis:
        K = self.ctx
        bplus, bminus = [1], [1]
        for P, n in G.items():
            if P == self._inf:
                continue
            phi = self._phi(P)
            if n > 0:
                bplus = pmul(K, bplus, ppow(K, phi, n))
            else:
                bminus = pmul(K, bminus, ppow(K, phi, -n))
        N = G.degree()
        basis = [RatFunc(K, pmul(K, [0] * i + [1], bminus), bplus) for i in range(N + 1)]
        return RRBasis(G, basis, ambient_degree=max(N, 0))

    def h0(self, G: Divisor) -> int:
        return max(0, G.degree() + 1)

    def h1(self, G: Divisor) -> int:
        return self.h0(self.canonical_divisor() - G)

    def omega_basis(self, A: Divisor) -> RRBasis:
        L = self.rr_basis(self.canonical_divisor() - A)
        return RRBasis(A, [Differential(self, h) for h in L.basis], L.ambient_degree,
                       kind="differentials")

    # Cartier ------------------------------------------------------------
    def cartier(self, w: Differential) -> Differential:
        """C(h dx) for h = n/d: C(n d^(p-1) / d^p dx) = C(n d^(p-1) dx) / d."""
        K = self.ctx
        p = K.p
        h = w.f
        g = pmul(K, list(h.num), ppow(K, list(h.den), p - 1))
        out = []
        for i in range(p - 1, len(g), p):
            out.append(K.pth_root(g[i]))
        return Differential(self, RatFunc(K, out, h.den))
