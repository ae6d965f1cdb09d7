"""Polynomials, rational functions, matrices and truncated Laurent series."""

from .linalg import Matrix, kernel, rank, rref, solve
from .mpoly import MPoly
from .poly import Poly, RatFunc, is_irreducible, is_squarefree, poly_gcd
from .series import EXACT, LaurentSeries, PrecisionError

__all__ = [
    "Matrix", "kernel", "rank", "rref", "solve", "MPoly", "Poly", "RatFunc",
    "is_irreducible", "is_squarefree", "poly_gcd", "EXACT", "LaurentSeries",
    "PrecisionError",
]
