"""Exact arithmetic in finite fields F_{p^m} and towers F_q < F_{q^l}.

Elements are plain ints encoding the coefficient vector of their
polynomial-basis representation: a_0 + a_1 w + ... + a_{m-1} w^{m-1}
corresponds to the integer a_0 + a_1 p + ... + a_{m-1} p^{m-1}.  For
p = 2 this is the usual bitmask, so addition is XOR.

Heavy code paths work directly on these ints through the methods of
:class:`FieldCtx`; :class:`FieldElement` wraps an int with operator
overloading for the public API.
"""

from __future__ import annotations

import functools
from typing import Iterable, Optional, Sequence

SIZE_CAP = 1 << 20


class FieldError(ValueError):
    pass


class FieldSizeError(FieldError):
    """Requested field exceeds the size cap."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


# -- tiny F_p[T] helpers used only to validate / pick moduli ---------------

def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv = pow(f[-1], p - 2, p)
    while len(_fp_trim(a)) - 1 >= df:
        c = a[-1] * inv % p
        s = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[s + i] = (a[s + i] - c * fi) % p
    return a


def _fp_mulmod(a, b, f, p):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] + ai * bj) % p
    return _fp_mod(r, f, p)


def _fp_powmod(a, e, f, p):
    r = [1]
    a = _fp_mod(a, f, p)
    while e:
        if e & 1:
            r = _fp_mulmod(r, a, f, p)
        a = _fp_mulmod(a, a, f, p)
        e >>= 1
    return r


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    r = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(r)


def fp_poly_is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (coefficients low to high)."""
    f = _fp_trim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        raise FieldError("constant polynomial")
    if m == 1:
        return True
    x = [0, 1]
    if _fp_sub(_fp_powmod(x, p ** m, f, p), x, p):
        return False
    for r in prime_factors(m):
        h = _fp_sub(_fp_powmod(x, p ** (m // r), f, p), x, p)
        g = _fp_gcd(f, h, p)
        if len(g) > 1:
            return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Least monic irreducible of degree m over F_p.

    Polynomials are ordered by their integer encoding sum c_i p^i, i.e.
    compared from the leading coefficient downwards.
    """
    if m == 1:
        return (0, 1)
    for k in range(p ** m):
        low = []
        v = k
        for _ in range(m):
            v, d = divmod(v, p)
            low.append(d)
        if low[0] == 0:
            continue
        cand = tuple(low) + (1,)
        if fp_poly_is_irreducible(cand, p):
            return cand
    raise FieldError("no irreducible polynomial found")  # pragma: no cover


class FieldCtx:
    """The field F_p[T]/(modulus) with elements encoded as ints."""

    def __init__(self, p: int, m: int, modulus: Sequence[int], gen: str = "w"):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.gen = gen
        self.size = p ** m
        self.char2 = p == 2
        self._exp = None
        self._log = None
        self._zech = None
        self._modint = sum(c * p ** i for i, c in enumerate(self.modulus))

    # identity ---------------------------------------------------------
    def _key(self):
        return (self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"FieldCtx({self.text()})"

    def text(self) -> str:
        mod = ",".join(str(c) for c in self.modulus)
        return f"field p={self.p} m={self.m} modulus={mod} gen={self.gen}"

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def elements(self) -> range:
        return range(self.size)

    # digits -----------------------------------------------------------
    def digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, d = divmod(a, p)
            out.append(d)
        return out

    def from_digits(self, ds: Iterable[int]) -> int:
        v = 0
        mul = 1
        p = self.p
        for d in ds:
            v += (d % p) * mul
            mul *= p
        return v

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    # slow multiplication (bootstraps the tables) -----------------------
    def _mul_slow(self, a: int, b: int) -> int:
        if self.char2:
            m = self.m
            top = 1 << m
            mod = self._modint
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mod
            return r
        if self.m == 1:
            return a * b % self.p
        p = self.p
        da, db = self.digits(a), self.digits(b)
        r = [0] * (2 * self.m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    r[i + j] = (r[i + j] + x * y) % p
        return self.from_digits(_fp_mod(r, list(self.modulus), p))

    def _pow_slow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        n = self.size - 1
        facs = prime_factors(n) if n > 1 else []
        g = None
        for cand in range(1, self.size):
            if all(self._pow_slow(cand, n // r) != 1 for r in facs):
                g = cand
                break
        exp = [0] * (2 * n + 2)
        log = [0] * self.size
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(n, 2 * n + 2):
            exp[i] = exp[i - n]
        self._exp, self._log = exp, log
        self.primitive = g
        if not self.char2 and self.m > 1:
            # Zech logarithms: 1 + g^i = g^zech[i] (or -1 when the sum is 0)
            self._zech = [log[s] if s else -1 for s in (self._add_slow(1, exp[i]) for i in range(n))]

    @property
    def exp_table(self):
        if self._exp is None:
            self._build_tables()
        return self._exp

    @property
    def log_table(self):
        if self._log is None:
            self._build_tables()
        return self._log

    # arithmetic -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.char2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        if self._zech is None:
            self._build_tables()
        log = self._log
        la = log[a]
        z = self._zech[(log[b] - la) % (self.size - 1)]
        if z < 0:
            return 0
        return self._exp[la + z]

    def _add_slow(self, a: int, b: int) -> int:
        p = self.p
        r = 0
        mul = 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            r += ((x + y) % p) * mul
            mul *= p
        return r

    def neg(self, a: int) -> int:
        if self.char2:
            return a
        p = self.p
        if self.m == 1:
            return (-a) % p
        if a and self._log is not None:
            return self._exp[self._log[a] + (self.size - 1) // 2]
        r = 0
        mul = 1
        while a:
            a, x = divmod(a, p)
            r += ((-x) % p) * mul
            mul *= p
        return r

    def sub(self, a: int, b: int) -> int:
        if self.char2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is None:
            self._build_tables()
        return self._exp[self._log[a] + self._log[b]]

    def smul(self, n: int, a: int) -> int:
        """The integer multiple n*a."""
        n %= self.p
        if n == 0 or a == 0:
            return 0
        if n == 1:
            return a
        return self.mul(n, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + self.text())
        if self._log is None:
            self._build_tables()
        return self._exp[(self.size - 1 - self._log[a]) % (self.size - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        if self._log is None:
            self._build_tables()
        return self._exp[(self._log[a] * e) % (self.size - 1)]

    def frob(self, a: int, k: int = 1) -> int:
        """a^(p^k); negative k gives inverse Frobenius powers."""
        k %= self.m
        if k == 0 or a == 0:
            return a
        return self.pow(a, self.p ** k)

    def pth_root(self, a: int) -> int:
        return self.frob(a, self.m - 1)

    def qth_root(self, a: int, q: int) -> int:
        k = _log_p(q, self.p)
        return self.frob(a, -k)

    # text -------------------------------------------------------------
    def format(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        ds = self.digits(a)
        terms = []
        for i in range(self.m - 1, -1, -1):
            c = ds[i]
            if not c:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = self.gen
            else:
                mono = f"{self.gen}^{i}"
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return "+".join(terms) if terms else "0"

    def format_power(self, a: int) -> str:
        """Format as a power of the generator when the generator is primitive."""
        g = self.gen_element()
        if self.m == 1 or a in (0, 1):
            return self.format(a)
        n = self.size - 1
        lg = self.log_table[g]
        from math import gcd
        if gcd(lg, n) != 1:
            return self.format(a)
        k = self.log_table[a] * pow(lg, -1, n) % n
        return self.gen if k == 1 else f"{self.gen}^{k}"

    def parse(self, s: str) -> int:
        from .parse import parse_element
        return parse_element(s, self)

    def __call__(self, v) -> "FieldElement":
        if isinstance(v, FieldElement):
            if v.ctx != self:
                raise FieldError("context mismatch")
            return v
        if isinstance(v, str):
            return FieldElement(self, self.parse(v))
        return FieldElement(self, int(v))

    def gen_element(self) -> int:
        return self.p if self.m > 1 else self.from_int(-self.modulus[0])


def _log_p(q: int, p: int) -> int:
    k = 0
    while q > 1:
        if q % p:
            raise FieldError(f"{q} is not a power of {p}")
        q //= p
        k += 1
    return k


@functools.lru_cache(maxsize=None)
def _mk_field_cached(p, m, modulus, gen):
    return FieldCtx(p, m, modulus, gen)


def mk_field(p: int, m: int = 1, modulus: Optional[Sequence[int]] = None,
             gen: str = "w") -> FieldCtx:
    """Build F_{p^m}; with no modulus the least irreducible one is used."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be positive")
    if p ** m > SIZE_CAP:
        raise FieldSizeError(f"field of size {p}^{m} exceeds cap {SIZE_CAP}")
    if modulus is None:
        modulus = default_modulus(p, m)
    else:
        modulus = tuple(c % p for c in modulus)
        while len(modulus) > 1 and modulus[-1] == 0:
            modulus = modulus[:-1]
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree m")
        if not fp_poly_is_irreducible(modulus, p):
            raise FieldError("modulus is reducible")
    return _mk_field_cached(p, m, tuple(modulus), gen)


class FieldElement:
    """An element of a :class:`FieldCtx`, with arithmetic operators."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v: int):
        self.ctx = ctx
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldError("context mismatch")
            return other.v
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.v, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.v, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.v))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(o, self.v))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.v, e))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.v))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.v == other.v
        if isinstance(other, int):
            return self.v == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return self.ctx.format(self.v)

    __str__ = __repr__


# -- embeddings and towers ---------------------------------------------------

def subfield_elements(big: FieldCtx, m_small: int) -> list[int]:
    """The elements of the unique subfield of size p^m_small of big."""
    if big.m % m_small:
        raise FieldError("degree does not divide")
    n = big.size - 1
    step = n // (big.p ** m_small - 1)
    exp = big.exp_table
    return [0] + sorted(exp[i * step] for i in range(big.p ** m_small - 1))


def _eval_fp_poly_in(big: FieldCtx, coeffs: Sequence[int], x: int) -> int:
    r = 0
    for c in reversed(coeffs):
        r = big.add(big.mul(r, x), big.from_int(c))
    return r


class Embedding:
    """An injective ring map small -> big, determined by the image of small's generator.

    ``coords`` expresses elements of big in the small-basis 1, t, ..., t^(k-1)
    where t is big's generator and k = [big : small].
    """

    def __init__(self, small: FieldCtx, big: FieldCtx, root: Optional[int] = None):
        if small.p != big.p or big.m % small.m:
            raise FieldError("no embedding between these fields")
        self.small, self.big = small, big
        self.degree = big.m // small.m
        if root is None:
            roots = self.candidate_roots(small, big)
            root = roots[0]
        self.root = root
        # images of the F_p-basis w^i of small
        basis = []
        x = 1
        for _ in range(small.m):
            basis.append(x)
            x = big.mul(x, root)
        self._basis_images = basis
        table = []
        for a in range(small.size):
            v = 0
            for i, d in enumerate(small.digits(a)):
                if d:
                    v = big.add(v, big.smul(d, basis[i]))
            table.append(v)
        self._table = table
        self._inverse = {v: a for a, v in enumerate(table)}
        self._coord_matrix = None

    @staticmethod
    def candidate_roots(small: FieldCtx, big: FieldCtx) -> list[int]:
        if small.m == 1:
            return [small.gen_element()]
        cands = subfield_elements(big, small.m)
        roots = [x for x in cands if _eval_fp_poly_in(big, small.modulus, x) == 0]
        if not roots:
            raise FieldError("modulus has no root in the larger field")  # pragma: no cover
        return roots

    def __call__(self, a: int) -> int:
        return self._table[a]

    def image(self, a: int) -> int:
        return self._table[a]

    def try_descend(self, b: int) -> Optional[int]:
        return self._inverse.get(b)

    def _build_coords(self):
        # columns: F_p-digits of image(w_s^a) * t^i for i < k, a < m_s
        big, small, k = self.big, self.small, self.degree
        p = big.p
        t = big.gen_element()
        cols = []
        ti = 1
        for i in range(k):
            for a in range(small.m):
                cols.append(big.digits(big.mul(self._basis_images[a], ti)))
            ti = big.mul(ti, t)
        n = big.m
        # augmented [A | I] with A[r][c] = cols[c][r]; invert mod p
        A = [[cols[c][r] for c in range(n)] + [1 if j == r else 0 for j in range(n)]
             for r in range(n)]
        for c in range(n):
            piv = next(r for r in range(c, n) if A[r][c] % p)
            A[c], A[piv] = A[piv], A[c]
            inv = pow(A[c][c], p - 2, p)
            A[c] = [x * inv % p for x in A[c]]
            for r in range(n):
                if r != c and A[r][c]:
                    f = A[r][c]
                    A[r] = [(x - f * y) % p for x, y in zip(A[r], A[c])]
        self._coord_matrix = [row[n:] for row in A]

    def coords(self, b: int) -> list[int]:
        """Coordinates of b in the small-basis (1, t, ..., t^(k-1))."""
        if self.degree == 1:
            return [self._inverse[b]]
        if self._coord_matrix is None:
            self._build_coords()
        p = self.big.p
        ds = self.big.digits(b)
        x = [sum(r * d for r, d in zip(row, ds)) % p for row in self._coord_matrix]
        ms = self.small.m
        return [self.small.from_digits(x[i * ms:(i + 1) * ms]) for i in range(self.degree)]

    def basis(self) -> list[int]:
        """The small-basis (1, t, ..., t^(k-1)) of big used by :meth:`coords`."""
        t = self.big.gen_element()
        out, x = [], 1
        for _ in range(self.degree):
            out.append(x)
            x = self.big.mul(x, t)
        return out


class FieldTower:
    """F_q inside F_{q^ell}: the base field, the extension and an embedding."""

    def __init__(self, base: FieldCtx, ext: FieldCtx, embedding: Optional[Embedding] = None):
        self.base, self.ext = base, ext
        self.embedding = embedding or Embedding(base, ext)
        self.ell = ext.m // base.m
        self.q = base.size

    @property
    def embed_image(self) -> int:
        return self.embedding.root

    def __repr__(self):
        return f"FieldTower(F_{self.base.size} < F_{self.ext.size})"

    def __eq__(self, other):
        return (isinstance(other, FieldTower) and self.base == other.base
                and self.ext == other.ext and self.embedding.root == other.embedding.root)

    def __hash__(self):
        return hash((self.base, self.ext, self.embedding.root))

    # int-level helpers
    def embed_int(self, a: int) -> int:
        return self.embedding(a)

    def descend_int(self, b: int) -> Optional[int]:
        if self.ext.frob(b, self.base.m) != b:
            return None
        return self.embedding.try_descend(b)

    def trace_int(self, b: int) -> int:
        ext = self.ext
        s, x = 0, b
        for _ in range(self.ell):
            s = ext.add(s, x)
            x = ext.frob(x, self.base.m)
        return self.embedding.try_descend(s)

    def coords_int(self, b: int) -> list[int]:
        return self.embedding.coords(b)


def _check(a: FieldElement, ctx: FieldCtx):
    if a.ctx != ctx:
        raise FieldError("context mismatch")


def trace_to_base(a: FieldElement, t: FieldTower) -> FieldElement:
    _check(a, t.ext)
    return FieldElement(t.base, t.trace_int(a.v))


def frobenius_q(a: FieldElement, q: int) -> FieldElement:
    k = _log_p(q, a.ctx.p)
    return FieldElement(a.ctx, a.ctx.frob(a.v, k))


def pth_root(a: FieldElement) -> FieldElement:
    return FieldElement(a.ctx, a.ctx.pth_root(a.v))


def embed(a: FieldElement, t: FieldTower) -> FieldElement:
    _check(a, t.base)
    return FieldElement(t.ext, t.embed_int(a.v))


def try_descend(a: FieldElement, t: FieldTower) -> Optional[FieldElement]:
    _check(a, t.ext)
    v = t.descend_int(a.v)
    return None if v is None else FieldElement(t.base, v)


def mk_tower(base: FieldCtx, ext: FieldCtx) -> FieldTower:
    return FieldTower(base, ext)


def parse_field_line(line: str) -> FieldCtx:
    """Parse ``field p=2 m=3 modulus=1,1,0,1 gen=w`` (tokens after 'field' in any order)."""
    toks = line.split()
    if toks and toks[0] == "field":
        toks = toks[1:]
    kv = {}
    for tok in toks:
        if "=" not in tok:
            raise FieldError(f"bad field token {tok!r}")
        k, v = tok.split("=", 1)
        kv[k] = v
    try:
        p = int(kv["p"])
        m = int(kv.get("m", "1"))
    except (KeyError, ValueError) as exc:
        raise FieldError(f"bad field line {line!r}") from exc
    mod = None
    if "modulus" in kv:
        mod = [int(c) for c in kv["modulus"].split(",")]
    return mk_field(p, m, mod, kv.get("gen", "w"))
