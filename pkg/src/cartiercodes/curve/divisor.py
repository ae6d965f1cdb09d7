"""Places, divisors, differentials and Riemann-Roch bases shared by all curve models."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Optional, Sequence


class Place:
    """A closed point of a curve.

    ``key`` identifies the place among all places of the same curve; it is
    built from a canonical geometric representative (see the curve
    models).  ``point`` is that representative, with coordinates in
    ``field``, a field of degree ``degree`` over the curve's constant field.
    """

    __slots__ = ("degree", "key", "point", "field", "label", "extra")

    def __init__(self, degree: int, key: tuple, point: tuple, field, label: str = "",
                 extra: Any = None):
        self.degree = degree
        self.key = key
        self.point = point
        self.field = field
        self.label = label
        self.extra = extra

    def sort_key(self):
        return (self.degree, self.key)

    def __eq__(self, other):
        return isinstance(other, Place) and self.degree == other.degree and self.key == other.key

    def __hash__(self):
        return hash((self.degree, self.key))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return self.label or f"Place(deg={self.degree}, key={self.key})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1


class Divisor:
    """Finite formal sum of places with integer multiplicities."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[Dict[Place, int]] = None):
        self._c = {P: int(n) for P, n in (coeffs or {}).items() if n}

    @classmethod
    def of(cls, *places: Place, mult: int = 1):
        d: Dict[Place, int] = {}
        for P in places:
            d[P] = d.get(P, 0) + mult
        return cls(d)

    @classmethod
    def sum_of(cls, places: Iterable[Place]):
        return cls.of(*places)

    def items(self):
        return sorted(self._c.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list:
        return sorted(self._c, key=Place.sort_key)

    def __getitem__(self, P: Place) -> int:
        return self._c.get(P, 0)

    v = __getitem__

    def __add__(self, other: "Divisor") -> "Divisor":
        d = dict(self._c)
        for P, n in other._c.items():
            d[P] = d.get(P, 0) + n
        return Divisor(d)

    def __neg__(self):
        return Divisor({P: -n for P, n in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k: int):
        return Divisor({P: k * n for P, n in self._c.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    def degree(self) -> int:
        return sum(P.degree * n for P, n in self._c.items())

    def __ge__(self, other: "Divisor") -> bool:
        return geq(self, other)

    def __le__(self, other: "Divisor") -> bool:
        return geq(other, self)

    def is_effective(self) -> bool:
        return all(n > 0 for n in self._c.values())

    def positive_part(self) -> "Divisor":
        return Divisor({P: n for P, n in self._c.items() if n > 0})

    def negative_part(self) -> "Divisor":
        """G^- with G = G^+ - G^-, so the result is effective."""
        return Divisor({P: -n for P, n in self._c.items() if n < 0})

    def is_reduced(self) -> bool:
        return all(n == 1 for n in self._c.values())

    def count_support(self) -> int:
        return len(self._c)

    def g_u(self, q: int) -> "Divisor":
        """Sum of the places with multiplicity >= 0 and congruent to q-1 mod q."""
        return g_u(self, q)

    def text(self, fmt=None) -> str:
        fmt = fmt or repr
        parts = []
        for P, n in self.items():
            parts.append(f"{n}*{fmt(P)}" if n != 1 else fmt(P))
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self):
        return f"Divisor({self.text()})"


def geq(a: Divisor, b: Divisor) -> bool:
    places = set(a._c) | set(b._c)
    return all(a[P] >= b[P] for P in places)


def g_u(G: Divisor, q: int) -> Divisor:
    # multiplicity 0 counts when q = 1 only; for q >= 2, 0 is never q-1 mod q
    return Divisor({P: 1 for P, n in G._c.items() if n >= 0 and n % q == q - 1})


def disjoint(a: Divisor, b: Divisor) -> bool:
    return not (set(a._c) & set(b._c))


class Differential:
    """The differential f*dx for a function f of the curve's function field."""

    __slots__ = ("curve", "f")

    def __init__(self, curve, f):
        self.curve = curve
        self.f = f

    def __add__(self, o: "Differential"):
        return Differential(self.curve, self.f + o.f)

    def __sub__(self, o: "Differential"):
        return Differential(self.curve, self.f - o.f)

    def __neg__(self):
        return Differential(self.curve, -self.f)

    def __mul__(self, h):
        """Multiply by a function (or a constant given as a field int via scale)."""
        return Differential(self.curve, self.f * h)

    __rmul__ = __mul__

    def scale(self, c: int) -> "Differential":
        return Differential(self.curve, self.f.scale(c))

    def is_zero(self) -> bool:
        return self.f.is_zero()

    def __eq__(self, o):
        return isinstance(o, Differential) and self.f == o.f

    def __hash__(self):
        return hash(self.f)

    def valuation(self, P: Place) -> int:
        return self.curve.diff_valuation(self, P)

    def divisor(self) -> Divisor:
        return self.curve.diff_divisor(self)

    def residue(self, P: Place) -> int:
        return self.curve.residue(self, P)

    def __repr__(self):
        return f"({self.f}) dx"


@dataclass
class RRBasis:
    """A basis of L(G) (functions) or of Omega(A) (differentials)."""

    divisor: Divisor
    basis: list
    ambient_degree: int = 0
    kind: str = "functions"
    info: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]
