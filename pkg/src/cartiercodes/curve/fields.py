"""Residue fields of places: the extensions F_{Q^r} of a constant field F_Q.

Every curve keeps one :class:`ExtFields`.  For each r it fixes a field
E_r of size Q^r together with an embedding K -> E_r, and it provides
embeddings E_r -> E_s compatible with those, so that a geometric point
found over a large field can be moved to the smallest field containing it.
"""

from __future__ import annotations

from ..ff import Embedding, FieldCtx, FieldError, mk_field


class ExtFields:
    def __init__(self, K: FieldCtx):
        self.K = K
        self._fields = {1: (K, Embedding(K, K, root=K.gen_element()))}
        self._between = {}

    def get(self, r: int):
        if r not in self._fields:
            K = self.K
            E = mk_field(K.p, K.m * r)
            self._fields[r] = (E, Embedding(K, E))
        return self._fields[r]

    def field(self, r: int) -> FieldCtx:
        return self.get(r)[0]

    def emb(self, r: int) -> Embedding:
        return self.get(r)[1]

    def between(self, r: int, s: int) -> Embedding:
        """Embedding E_r -> E_s commuting with the embeddings of K."""
        if s % r:
            raise FieldError("degree does not divide")
        if (r, s) in self._between:
            return self._between[(r, s)]
        Er, er = self.get(r)
        Es, es = self.get(s)
        if r == 1:
            iota = es
        else:
            g = self.K.gen_element()
            target = es(g)
            iota = None
            for root in Embedding.candidate_roots(Er, Es):
                cand = Embedding(Er, Es, root)
                if cand(er(g)) == target:
                    iota = cand
                    break
            if iota is None:  # pragma: no cover
                raise FieldError("no compatible embedding")
        self._between[(r, s)] = iota
        return iota

    def frob(self, E: FieldCtx, a: int) -> int:
        """The K-Frobenius a -> a^Q."""
        return E.frob(a, self.K.m)

    def orbit(self, E: FieldCtx, pt: tuple) -> list:
        out = [pt]
        cur = tuple(self.frob(E, c) for c in pt)
        while cur != pt:
            out.append(cur)
            cur = tuple(self.frob(E, c) for c in cur)
        return out

    def descend_point(self, pt: tuple, s: int):
        """Move a point over E_s into E_r with r its orbit size; return (r, point)."""
        Es = self.field(s)
        r = len(self.orbit(Es, pt))
        if r == s:
            return r, pt
        iota = self.between(r, s)
        out = []
        for c in pt:
            d = iota.try_descend(c)
            if d is None:  # pragma: no cover
                raise FieldError("point does not descend")
            out.append(d)
        return r, tuple(out)

    def minpoly(self, r: int, a: int) -> list:
        """Minimal polynomial over K of a in E_r, coefficients in K (low to high)."""
        from ..polymat.poly import pmul
        E, emb = self.get(r)
        conj = [a]
        c = self.frob(E, a)
        while c != a:
            conj.append(c)
            c = self.frob(E, c)
        poly = [1]
        for c in conj:
            poly = pmul(E, poly, [E.neg(c), 1])
        return [emb.try_descend(x) for x in poly]

    def trace(self, r: int, a: int) -> int:
        E, emb = self.get(r)
        s, c = 0, a
        for _ in range(r):
            s = E.add(s, c)
            c = self.frob(E, c)
        out = emb.try_descend(s)
        if out is None:  # pragma: no cover
            raise FieldError("trace not in base field")
        return out


def normalize_point(E: FieldCtx, pt) -> tuple:
    """Scale projective coordinates so that the last nonzero one is 1."""
    pt = tuple(pt)
    for c in reversed(pt):
        if c:
            inv = E.inv(c)
            return tuple(E.mul(inv, x) for x in pt)
    raise ValueError("zero vector is not a projective point")
