"""Classical Goppa codes built from their alternant parity-check matrix."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .codes import LinearCode, code_eq, code_subset, subfield_subcode
from .ff import FieldTower
from .polymat.poly import Poly, is_squarefree, pmul, ppow, trim


class GoppaError(ValueError):
    pass


@dataclass(frozen=True)
class GoppaInstance:
    tower: FieldTower
    L: tuple
    f: Poly

    def __post_init__(self):
        ext = self.tower.ext
        if self.f.ctx != ext:
            raise GoppaError("Goppa polynomial must be over the extension field")
        if self.f.is_zero():
            raise GoppaError("Goppa polynomial is zero")
        if len(set(self.L)) != len(self.L):
            raise GoppaError("support elements must be distinct")
        for a in self.L:
            if self.f(a) == 0:
                raise GoppaError(f"Goppa polynomial vanishes at {ext.format(a)}")

    @property
    def n(self):
        return len(self.L)


def alternant_parity(inst: GoppaInstance) -> list[list[int]]:
    """Rows (alpha_i^j / f(alpha_i))_i for j < deg f, over the extension."""
    ext = inst.tower.ext
    scal = [ext.inv(inst.f(a)) for a in inst.L]
    rows = []
    for j in range(inst.f.degree):
        rows.append([ext.mul(ext.pow(a, j), s) for a, s in zip(inst.L, scal)])
    return rows


def grs_supercode(inst: GoppaInstance) -> LinearCode:
    """Kernel of the alternant matrix over the extension."""
    H = alternant_parity(inst)
    if not H:
        return LinearCode.full(inst.tower.ext, inst.n)
    return LinearCode.from_parity(H, inst.tower.ext, inst.n)


def goppa_code(inst: GoppaInstance) -> LinearCode:
    return subfield_subcode(grs_supercode(inst), inst.tower)


def goppa_power(tower: FieldTower, L: Sequence[int], f: Poly, e: int) -> LinearCode:
    return goppa_code(GoppaInstance(tower, tuple(L), f ** e))


@dataclass
class GoppaReport:
    holds: bool
    lhs_params: tuple
    rhs_params: tuple
    designed_distance: int
    dim_lower: int
    details: dict = field(default_factory=dict)

    def lines(self):
        return [
            f"Gamma(L, f^(q-1)) = {_fmt(self.lhs_params)}",
            f"Gamma(L, f^q)     = {_fmt(self.rhs_params)}",
            f"dimension lower bound {self.dim_lower}, designed distance {self.designed_distance}",
            f"equal: {'yes' if self.holds else 'NO'}",
        ]


def _fmt(p):
    n, k, d = p
    return f"[{n}, {k}, {'inf' if d is None else d}]"


def check_goppa_identity(tower: FieldTower, L: Sequence[int], f: Poly,
                         with_distance: bool = True) -> GoppaReport:
    """Compare Gamma(L, f^(q-1)) with Gamma(L, f^q) for squarefree f."""
    if not is_squarefree(f):
        raise GoppaError("Goppa polynomial is not squarefree")
    q = tower.q
    lhs = goppa_power(tower, L, f, q - 1)
    rhs = goppa_power(tower, L, f, q)
    n = len(L)
    holds = code_eq(lhs, rhs)
    lp = lhs.params(with_distance)
    rp = rhs.params(with_distance)
    return GoppaReport(
        holds=holds,
        lhs_params=lp,
        rhs_params=rp,
        designed_distance=q * f.degree + 1,
        dim_lower=max(0, n - tower.ell * (q - 1) * f.degree),
        details={"rhs_in_lhs": code_subset(rhs, lhs)},
    )


def random_squarefree(ctx, deg: int, rng: random.Random, avoid: Sequence[int] = ()) -> Poly:
    """Random monic squarefree polynomial of the given degree with no root in avoid."""
    while True:
        c = [rng.randrange(ctx.size) for _ in range(deg)] + [1]
        f = Poly(ctx, c)
        if deg == 0 or (is_squarefree(f) and all(f(a) != 0 for a in avoid)):
            return f


def random_instance(tower: FieldTower, rng: random.Random, n_max: int = 16,
                    deg_max: int = 3):
    """A random (L, f) with f squarefree, nonvanishing on L, and len(L) <= n_max."""
    ext = tower.ext
    while True:
        deg = rng.randint(1, deg_max)
        f = random_squarefree(ext, deg, rng)
        good = [a for a in range(ext.size) if f(a) != 0]
        n = min(len(good), rng.randint(max(2, deg + 1, n_max // 2), n_max))
        if n < 2:
            continue
        L = sorted(rng.sample(good, n))
        return L, f
