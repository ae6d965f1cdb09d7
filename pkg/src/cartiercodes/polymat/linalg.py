"""Dense linear algebra over a finite field (ints encoded by a FieldCtx).

Matrices are lists of rows.  Every routine is deterministic: pivots are
taken in column order, so ``rref`` gives a canonical echelon form and
``kernel`` a canonical basis.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..ff import FieldCtx


def _row_axpy(ctx: FieldCtx, target: list, f: int, src: list, start: int = 0):
    """target -= f * src, in place."""
    exp, log = ctx.exp_table, ctx.log_table
    lf = log[f]
    if ctx.char2:
        for j in range(start, len(src)):
            s = src[j]
            if s:
                target[j] ^= exp[lf + log[s]]
    else:
        sub = ctx.sub
        for j in range(start, len(src)):
            s = src[j]
            if s:
                target[j] = sub(target[j], exp[lf + log[s]])


def rref(ctx: FieldCtx, rows: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if M[i][c]:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        lead = M[r][c]
        if lead != 1:
            inv = ctx.inv(lead)
            M[r] = [ctx.mul(inv, x) for x in M[r]]
        prow = M[r]
        for i in range(nrows):
            if i != r and M[i][c]:
                _row_axpy(ctx, M[i], M[i][c], prow, c)
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(ctx: FieldCtx, rows) -> int:
    return len(rref(ctx, rows)[1])


def kernel(ctx: FieldCtx, rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {v : rows * v = 0}, one vector per free column, in column order."""
    R, pivots = rref(ctx, rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            if R[i][f]:
                v[pc] = ctx.neg(R[i][f])
        basis.append(v)
    return basis


def left_kernel(ctx, rows, ncols=None):
    """Basis of {u : u * rows = 0}."""
    if not rows:
        return []
    n = len(rows)
    cols = [[rows[i][j] for i in range(n)] for j in range(len(rows[0]))]
    return kernel(ctx, cols, n)


def solve(ctx: FieldCtx, rows, rhs) -> Optional[list[int]]:
    """One solution of rows * v = rhs, or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = rref(ctx, aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    v = [0] * ncols
    for i, pc in enumerate(pivots):
        v[pc] = R[i][ncols]
    return v


def matmul(ctx, A, B):
    if not A:
        return []
    nb = len(B[0]) if B else 0
    out = []
    exp, log = ctx.exp_table, ctx.log_table
    add = ctx.add
    for row in A:
        acc = [0] * nb
        for k, a in enumerate(row):
            if a:
                la = log[a]
                for j, b in enumerate(B[k]):
                    if b:
                        acc[j] = add(acc[j], exp[la + log[b]])
        out.append(acc)
    return out


def vecmat(ctx, v, B):
    return matmul(ctx, [v], B)[0]


def inverse(ctx, A):
    n = len(A)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(ctx, aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def span_contains(ctx, basis_rows, other_rows) -> bool:
    r = rank(ctx, basis_rows)
    return rank(ctx, list(basis_rows) + list(other_rows)) == r


class Matrix:
    """A matrix over a field with a few convenience methods."""

    def __init__(self, ctx: FieldCtx, rows, ncols: Optional[int] = None):
        self.ctx = ctx
        self.rows = [list(r) for r in rows]
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)

    @property
    def nrows(self):
        return len(self.rows)

    def rref(self) -> "Matrix":
        R, _ = rref(self.ctx, self.rows, self.ncols)
        return Matrix(self.ctx, R, self.ncols)

    def rank(self) -> int:
        return len(rref(self.ctx, self.rows, self.ncols)[1])

    def kernel(self) -> "Matrix":
        return Matrix(self.ctx, kernel(self.ctx, self.rows, self.ncols), self.ncols)

    def transpose(self) -> "Matrix":
        return Matrix(self.ctx, [list(c) for c in zip(*self.rows)] if self.rows else [],
                      self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.ctx, matmul(self.ctx, self.rows, other.rows), other.ncols)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.ctx == other.ctx
                and self.ncols == other.ncols and self.rows == other.rows)

    def text(self) -> str:
        f = self.ctx.format
        return "\n".join(" ".join(f(x) for x in r) for r in self.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"
