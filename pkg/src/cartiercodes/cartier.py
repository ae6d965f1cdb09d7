"""The Cartier operator on differentials and the fixed spaces behind Cartier codes.

A curve model supplies ``cartier`` (one application of C, p^(-1)-semilinear).
Here C_q = C^a for q = p^a is the a-fold iterate, and the fixed space of
C_q inside Omega(G - D) is computed as an F_q-linear kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .curve.divisor import Differential, Divisor, Place
from .ff import FieldTower, mk_field, FieldError
from .polymat.linalg import kernel
from .polymat.poly import pdivmod, pgcd, pmul, trim


class CartierError(ValueError):
    pass


@dataclass
class CartierCtx:
    """A curve over tower.ext together with the subfield F_q = tower.base."""

    curve: object
    tower: FieldTower

    def __post_init__(self):
        if self.curve.ctx != self.tower.ext:
            raise CartierError("curve must be defined over the extension field of the tower")

    @property
    def p(self) -> int:
        return self.tower.ext.p

    @property
    def a(self) -> int:
        """Exponent with q = p^a."""
        return self.tower.base.m

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def ell(self) -> int:
        return self.tower.ell


def cartier(w: Differential) -> Differential:
    return w.curve.cartier(w)


def cartier_iter(w: Differential, k: int) -> Differential:
    for _ in range(k):
        w = w.curve.cartier(w)
    return w


def cartier_q(w: Differential, ctx: CartierCtx) -> Differential:
    return cartier_iter(w, ctx.a)


def cartier_oracle(w: Differential) -> Differential:
    """C by an independent formula when the curve model provides one."""
    fn = getattr(w.curve, "cartier_formula", None)
    return fn(w) if fn is not None else w.curve.cartier(w)


def tower_for(curve, q: int) -> FieldTower:
    """The tower F_q < F_Q for a curve over F_Q."""
    K = curve.ctx
    a = 0
    v = 1
    while v < q:
        v *= K.p
        a += 1
    if v != q or K.m % a:
        raise FieldError(f"F_{q} is not a subfield of F_{K.size}")
    base = K if a == K.m else mk_field(K.p, a)
    return FieldTower(base, K)


# -- vectorising differentials ------------------------------------------------

def _coeffs(curve, h):
    """(A, b) of a function: numerator y-coefficients in K[x] and denominator."""
    if hasattr(h, "A"):
        return [list(c) for c in h.A], list(h.b)
    return [list(h.num)], list(h.den)


def diff_vectors(ws: Sequence[Differential]) -> list[list[int]]:
    """Coordinate vectors of differentials over a common denominator.

    Linear relations among the returned vectors are exactly the relations
    among the differentials, since the numerator form is unique once the
    denominator is fixed.
    """
    if not ws:
        return []
    curve = ws[0].curve
    K = curve.ctx
    parts = [_coeffs(curve, w.f) for w in ws]
    den = [1]
    for _A, b in parts:
        g = pgcd(K, den, b)
        den = pmul(K, den, pdivmod(K, b, g)[0])
    nums = []
    for A, b in parts:
        mult = pdivmod(K, den, b)[0]
        nums.append([pmul(K, mult, c) if c else [] for c in A])
    ny = max(len(A) for A in nums)
    nx = max([len(c) for A in nums for c in A] + [1])
    out = []
    for A in nums:
        v = []
        for j in range(ny):
            c = A[j] if j < len(A) else []
            v.extend(c[i] if i < len(c) else 0 for i in range(nx))
        out.append(v)
    return out


# -- fixed spaces ----------------------------------------------------------------

@dataclass
class FixedSpaceBasis:
    G: Divisor
    D: Divisor
    basis: list
    ambient_dim: int = 0
    info: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def _disjoint_check(G: Divisor, D: Divisor):
    if set(G.support()) & set(D.support()):
        raise CartierError("supports of G and D must be disjoint")


def fixed_space(ctx: CartierCtx, G: Divisor, D: Divisor, omega=None) -> FixedSpaceBasis:
    """F_q-basis of the C_q-fixed differentials in Omega(G - D).

    With (w_i) an F_{q^l}-basis of Omega(G - D) and (b_j) an F_q-basis of
    F_{q^l}, the b_j w_i span Omega(G - D) over F_q; the kernel of
    sum c_ij (C_q(b_j w_i) - b_j w_i) over F_q is the fixed space.
    """
    _disjoint_check(G, D)
    curve = ctx.curve
    K = curve.ctx
    tower = ctx.tower
    if omega is None:
        omega = curve.omega_basis(G - D).basis
    betas = tower.embedding.basis() if ctx.ell > 1 else [1]
    span = [w.scale(b) for w in omega for b in betas]
    if not span:
        return FixedSpaceBasis(G, D, [], 0)
    images = [cartier_q(w, ctx) for w in span]
    vecs = diff_vectors(span + images)
    N = len(span)
    cols = []
    for v_img, v_src in zip(vecs[N:], vecs[:N]):
        diff = [K.sub(a, b) for a, b in zip(v_img, v_src)]
        cols.append([c for x in diff for c in tower.coords_int(x)])
    rows = [[col[r] for col in cols] for r in range(len(cols[0]))]
    Fq = tower.base
    ker = kernel(Fq, rows, N)
    basis = []
    for v in ker:
        w = None
        for c, s in zip(v, span):
            if c:
                t = s.scale(tower.embed_int(c))
                w = t if w is None else w + t
        basis.append(w)
    return FixedSpaceBasis(G, D, basis, ambient_dim=N)


def check_fixed(ctx: CartierCtx, w: Differential) -> bool:
    return cartier_q(w, ctx) == w


def check_vanishing(ctx: CartierCtx, w: Differential, P: Place, s: int) -> bool:
    """For C_q-fixed w: v_P(w) >= s*q - 1 implies v_P(w) >= s*q."""
    if s < 1:
        raise CartierError("s must be positive")
    if not check_fixed(ctx, w):
        raise CartierError("differential is not fixed by C_q")
    v = w.curve.diff_valuation(w, P)
    q = ctx.q
    return v < s * q - 1 or v >= s * q
