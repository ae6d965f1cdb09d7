"""Linear codes over a finite field.

A code is identified by its reduced row echelon generator matrix, so two
codes are equal exactly when their canonical generators coincide.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .ff import FieldCtx, FieldError, FieldTower, mk_field, parse_field_line
from .polymat.linalg import Matrix, kernel, rref

DEFAULT_BUDGET = 1 << 24


class BudgetExceeded(RuntimeError):
    pass


class LinearCode:
    """Row space of a generator matrix over ``ctx``, stored in canonical form."""

    def __init__(self, ctx: FieldCtx, n: int, rows: Sequence[Sequence[int]] = ()):
        self.ctx = ctx
        self.n = n
        for r in rows:
            if len(r) != n:
                raise ValueError("row length does not match n")
        R, piv = rref(ctx, rows, n) if rows else ([], [])
        self.gen = [tuple(r) for r in R]
        self.pivots = tuple(piv)
        self._d = None

    # construction -------------------------------------------------------
    @classmethod
    def from_generator(cls, M, ctx: Optional[FieldCtx] = None, n: Optional[int] = None):
        if isinstance(M, Matrix):
            return cls(M.ctx, M.ncols, M.rows)
        return cls(ctx, n if n is not None else len(M[0]), M)

    @classmethod
    def from_parity(cls, H, ctx: Optional[FieldCtx] = None, n: Optional[int] = None):
        if isinstance(H, Matrix):
            ctx, n, rows = H.ctx, H.ncols, H.rows
        else:
            rows = H
            n = n if n is not None else len(H[0])
        return cls(ctx, n, kernel(ctx, rows, n))

    @classmethod
    def full(cls, ctx, n):
        return cls(ctx, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ctx, n):
        return cls(ctx, n, [])

    # basic data ---------------------------------------------------------
    @property
    def k(self) -> int:
        return len(self.gen)

    @property
    def q(self) -> int:
        return self.ctx.size

    def generator(self) -> Matrix:
        return Matrix(self.ctx, self.gen, self.n)

    def parity_matrix(self) -> Matrix:
        return Matrix(self.ctx, kernel(self.ctx, self.gen, self.n), self.n)

    def contains(self, word: Sequence[int]) -> bool:
        """Membership by reduction against the canonical generator."""
        if len(word) != self.n:
            raise ValueError("word length mismatch")
        ctx = self.ctx
        w = list(word)
        for row, pc in zip(self.gen, self.pivots):
            c = w[pc]
            if c:
                for j in range(pc, self.n):
                    if row[j]:
                        w[j] = ctx.sub(w[j], ctx.mul(c, row[j]))
        return not any(w)

    def encode(self, msg: Sequence[int]) -> list[int]:
        ctx = self.ctx
        out = [0] * self.n
        for a, row in zip(msg, self.gen):
            if a:
                for j, x in enumerate(row):
                    if x:
                        out[j] = ctx.add(out[j], ctx.mul(a, x))
        return out

    def __eq__(self, other):
        return code_eq(self, other)

    def __hash__(self):
        return hash((self.ctx, self.n, tuple(self.gen)))

    def __le__(self, other):
        return code_subset(self, other)

    def __repr__(self):
        return f"LinearCode({self.params_text()})"

    # parameters ---------------------------------------------------------
    def min_distance(self, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> Optional[int]:
        """Exact minimum distance by enumeration; None for the zero code."""
        if self._d is None:
            self._d = min_distance(self, budget=budget, jobs=jobs)
        return self._d

    def params(self, with_distance: bool = True, budget: int = DEFAULT_BUDGET,
               jobs: int = 1) -> tuple:
        d = self.min_distance(budget, jobs) if with_distance else None
        return (self.n, self.k, d)

    def params_text(self, with_distance: bool = True, budget: int = DEFAULT_BUDGET) -> str:
        if with_distance:
            d = self.min_distance(budget)
            ds = "inf" if d is None else str(d)
            return f"[{self.n}, {self.k}, {ds}]_{self.q}"
        return f"[{self.n}, {self.k}]_{self.q}"

    # text ---------------------------------------------------------------
    def text(self, fmt: str = "text") -> str:
        lines = [f"code q={self.q} n={self.n} k={self.k}"]
        if self.ctx.m > 1:
            lines.append(self.ctx.text())
        if fmt == "text":
            lines += [" ".join(self.ctx.format(x) for x in r) for r in self.gen]
        elif fmt == "bits":
            ctx = self.ctx
            lines += ["".join("".join(str(d) for d in reversed(ctx.digits(x))) if ctx.m > 1
                              else str(x) for x in r) for r in self.gen]
        else:
            raise ValueError(f"unknown format {fmt!r}")
        return "\n".join(lines) + "\n"


def _check_compatible(a: LinearCode, b: LinearCode):
    if a.ctx != b.ctx or a.n != b.n:
        raise FieldError("codes live over different fields or lengths")


def code_eq(a: LinearCode, b: LinearCode) -> bool:
    _check_compatible(a, b)
    return a.gen == b.gen


def code_subset(a: LinearCode, b: LinearCode) -> bool:
    _check_compatible(a, b)
    return all(b.contains(r) for r in a.gen)


def from_generator(M, ctx=None, n=None) -> LinearCode:
    return LinearCode.from_generator(M, ctx, n)


def from_parity(H, ctx=None, n=None) -> LinearCode:
    return LinearCode.from_parity(H, ctx, n)


def parse_code(text: str) -> LinearCode:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("code"):
        raise ValueError("missing 'code' header")
    kv = dict(t.split("=", 1) for t in lines[0].split()[1:])
    q, n, k = int(kv["q"]), int(kv["n"]), int(kv["k"])
    rest = lines[1:]
    if rest and rest[0].startswith("field"):
        ctx = parse_field_line(rest[0])
        rest = rest[1:]
    else:
        ctx = mk_field(q)
    if ctx.size != q:
        raise ValueError("field line does not match q")
    rows = [[ctx.parse(t) for t in ln.split()] for ln in rest]
    if len(rows) != k:
        raise ValueError("row count does not match k")
    return LinearCode(ctx, n, rows)


# -- subfield subcodes and Frobenius ---------------------------------------

def embed_code(C: LinearCode, t: FieldTower) -> LinearCode:
    if C.ctx != t.base:
        raise FieldError("code is not over the tower base")
    return LinearCode(t.ext, C.n, [[t.embed_int(x) for x in r] for r in C.gen])


def subfield_subcode(C: LinearCode, t: FieldTower) -> LinearCode:
    """{c in F_q^n : c in C}, by expanding parity checks over an F_q-basis."""
    if C.ctx != t.ext:
        raise FieldError("code is not over the tower extension")
    H = kernel(C.ctx, C.gen, C.n)
    rows = []
    for h in H:
        coords = [t.coords_int(x) for x in h]
        for j in range(t.ell):
            rows.append([c[j] for c in coords])
    if not rows:
        return LinearCode.full(t.base, C.n)
    return LinearCode.from_parity(rows, t.base, C.n)


def frobenius_code(word: Sequence[int], ctx: FieldCtx, q: int) -> list[int]:
    """Coordinate-wise x -> x^q."""
    k = 0
    while q > 1:
        q //= ctx.p
        k += 1
    return [ctx.frob(x, k) for x in word]


def subfield_params_bound(n: int, r: int, d, ell: int) -> tuple:
    return (n, max(0, n - ell * r), d)


# -- minimum distance ------------------------------------------------------

def _packed_rows(C: LinearCode):
    """Rows packed as ints (m bits per coordinate) plus the F_2-basis expansion."""
    ctx = C.ctx
    m = ctx.m
    basis = [1 << i for i in range(m)]
    packed = []
    for row in C.gen:
        for b in basis:
            v = 0
            for j, x in enumerate(row):
                v |= ctx.mul(b, x) << (j * m)
            packed.append(v)
    return packed


def _weight_fn(n, m):
    if m == 1:
        return lambda v: v.bit_count()
    low = 0
    for j in range(n):
        low |= 1 << (j * m)

    def weight(v):
        y = v
        for s in range(1, m):
            y |= v >> s
        return (y & low).bit_count()
    return weight


def _gray_min(packed, n, m, lo_bits, prefix):
    """Min nonzero weight over codewords whose top generators are fixed by prefix."""
    weight = _weight_fn(n, m)
    k = len(packed)
    top = packed[lo_bits:]
    base = 0
    for i, g in enumerate(top):
        if prefix >> i & 1:
            base ^= g
    best = weight(base) if base else n + 1
    v = base
    for i in range(1, 1 << lo_bits):
        bit = (i & -i).bit_length() - 1
        v ^= packed[bit]
        if v:
            w = weight(v)
            if w < best:
                best = w
    return best


def _min_distance_generic(C: LinearCode) -> int:
    ctx = C.ctx
    best = C.n
    k = C.k
    Q = ctx.size
    # projective enumeration: first nonzero message coordinate equals 1
    for lead in range(k):
        for tail in range(Q ** (k - lead - 1)):
            w = [0] * C.n
            r = C.gen[lead]
            w = list(r)
            t = tail
            for i in range(lead + 1, k):
                t, a = divmod(t, Q)
                if a:
                    for j, x in enumerate(C.gen[i]):
                        if x:
                            w[j] = ctx.add(w[j], ctx.mul(a, x))
            wt = sum(1 for x in w if x)
            if wt < best:
                best = wt
    return best


def min_distance(C: LinearCode, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> Optional[int]:
    if C.k == 0:
        return None
    if C.ctx.size ** C.k > budget:
        raise BudgetExceeded(f"{C.ctx.size}^{C.k} codewords exceed budget {budget}")
    if not C.ctx.char2:
        return _min_distance_generic(C)
    packed = _packed_rows(C)
    nb = len(packed)
    split = 0
    if jobs > 1 and nb > 12:
        split = min(nb - 10, max(1, (jobs - 1).bit_length() + 2))
    lo = nb - split
    args = [(packed, C.n, C.ctx.m, lo, pre) for pre in range(1 << split)]
    if split and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_gray_star, args))
    else:
        results = [_gray_star(a) for a in args]
    return min(results)


def _gray_star(a):
    return _gray_min(*a)


def sampled_distance_upper_bound(C: LinearCode, samples: int, seed: int = 0) -> Optional[int]:
    """Smallest weight seen among random nonzero codewords; an upper bound, not exact."""
    if C.k == 0:
        return None
    rng = random.Random(seed)
    best = C.n
    for _ in range(samples):
        msg = [rng.randrange(C.ctx.size) for _ in range(C.k)]
        if not any(msg):
            continue
        best = min(best, sum(1 for x in C.encode(msg) if x))
    return best
