import random

import pytest

from cartiercodes.agc import AgInstance, residue_vector
from cartiercodes.cartier import (CartierCtx, CartierError, cartier, cartier_iter, cartier_oracle,
                                  cartier_q, check_fixed, check_vanishing, diff_vectors,
                                  fixed_space, tower_for)
from cartiercodes.curve import Differential, Divisor, ProjectiveLine, geq
from cartiercodes.ff import FieldError, mk_field, mk_tower

F16 = mk_field(2, 4)


@pytest.fixture(scope="module")
def line16():
    return ProjectiveLine(F16)


def _rand(curve, rng):
    if isinstance(curve, ProjectiveLine):
        return curve.random_function(rng, 3)
    return curve.random_function(rng, deg=1)


def _diff(curve, rng):
    return curve.differential(_rand(curve, rng))


@pytest.fixture(scope="module", params=["line8", "line16", "klein", "hermitian"])
def any_curve(request, line8, line16, klein, hermitian):
    return {"line8": line8, "line16": line16, "klein": klein, "hermitian": hermitian}[request.param]


class TestExamples:
    def test_dx_is_killed(self, klein, line4):
        for X in (klein, line4):
            assert cartier(X.differential(X.one())).is_zero()

    def test_logarithmic_dx_over_x(self, klein, line4):
        for X in (klein, line4):
            w = X.differential(X.one() / X.x())
            assert cartier(w) == w

    def test_iterates_on_the_line(self):
        L = ProjectiveLine(mk_field(2))
        x = L.x()
        assert cartier(L.differential(x ** 3)) == L.differential(x)
        assert cartier(L.differential(x)) == L.differential(L.one())
        assert cartier(L.differential(L.one())).is_zero()

    def test_q_equal_p_is_one_step(self, klein):
        ctx = CartierCtx(klein, tower_for(klein, 2))
        rng = random.Random(1)
        for _ in range(10):
            w = _diff(klein, rng)
            assert cartier_q(w, ctx) == cartier(w)

    def test_tower_for(self, klein):
        assert tower_for(klein, 2).ell == 3
        assert tower_for(klein, 8).ell == 1
        with pytest.raises(FieldError):
            tower_for(klein, 4)

    def test_context_mismatch(self, klein):
        with pytest.raises(CartierError):
            CartierCtx(klein, mk_tower(mk_field(2), mk_field(2, 2)))


class TestTwoRoutes:
    def test_matrix_and_derivative_formula_agree(self, klein, hermitian):
        for X in (klein, hermitian):
            rng = random.Random(2)
            for _ in range(60):
                w = X.differential(X.random_function(rng, deg=2))
                assert cartier(w) == cartier_oracle(w)


class TestGlobalProperties:
    def test_semilinearity(self, any_curve):
        X = any_curve
        p = X.ctx.p
        rng = random.Random(3)
        for _ in range(30):
            h, w = _rand(X, rng), _diff(X, rng)
            assert cartier(w * (h ** p)) == cartier(w) * h

    def test_scalar_semilinearity(self, any_curve):
        X = any_curve
        K = X.ctx
        rng = random.Random(4)
        for _ in range(10):
            a = rng.randrange(1, K.size)
            w = _diff(X, rng)
            assert cartier(w.scale(a)) == cartier(w).scale(K.pth_root(a))

    def test_exact_forms(self, any_curve):
        X = any_curve
        rng = random.Random(5)
        for _ in range(30):
            assert cartier(X.exact(_rand(X, rng))).is_zero()

    def test_logarithmic_forms(self, any_curve):
        X = any_curve
        rng = random.Random(6)
        for _ in range(30):
            h = _rand(X, rng)
            w = Differential(X, h.derivative() / h)
            assert cartier(w) == w

    def test_additivity(self, any_curve):
        X = any_curve
        rng = random.Random(7)
        for _ in range(10):
            a, b = _diff(X, rng), _diff(X, rng)
            assert cartier(a + b) == cartier(a) + cartier(b)


def _local_parameter_places(X, count, rng):
    """Rational affine places where x - x(P) is a local parameter."""
    out = []
    for P in X.rational_points():
        if P.point[-1] == 0:
            continue
        t = X.x() - X.const(P.point[0])
        if X.valuation(t, P) == 1:
            out.append((P, t))
    rng.shuffle(out)
    return out[:count]


def _engineered(X, rng, P, t, k):
    """A differential u * t^(-k) dx with u a unit at P."""
    while True:
        u = _rand(X, rng)
        if X.valuation(u, P) == 0:
            return X.differential(u / (t ** k)) if k > 0 else X.differential(u * (t ** (-k)))


class TestLocalProperties:
    def test_valuation_implications(self, any_curve):
        X = any_curve
        rng = random.Random(8)
        seen = {"regular": 0, "deep": 0, "simple": 0}
        for P, t in _local_parameter_places(X, 5, rng):
            for k in range(-2, 5):
                w = _engineered(X, rng, P, t, k)
                v = X.diff_valuation(w, P)
                Cw = cartier(w)
                vc = X.diff_valuation(Cw, P) if not Cw.is_zero() else None
                if v >= 0:
                    assert vc is None or vc >= 0
                    seen["regular"] += 1
                elif v <= -2:
                    assert vc is None or vc > v
                    seen["deep"] += 1
                else:
                    assert vc == -1
                    seen["simple"] += 1
        assert all(n >= 5 for n in seen.values())

    def test_residue_is_pth_root(self, any_curve):
        X = any_curve
        K = X.ctx
        rng = random.Random(9)
        n = 0
        for P, t in _local_parameter_places(X, 5, rng):
            for k in (1, 1, 1, 2, 2, 3):
                w = _engineered(X, rng, P, t, k)
                assert X.residue(cartier(w), P) == K.pth_root(X.residue(w, P))
                n += 1
        assert n >= 25

    @pytest.mark.parametrize("q", [2, 4, 16])
    def test_valuation_floor_line(self, line16, q):
        X = line16
        ctx = CartierCtx(X, tower_for(X, q))
        rng = random.Random(q)
        for _ in range(40):
            w = _diff(X, rng)
            Cw = cartier_q(w, ctx)
            if Cw.is_zero():
                continue
            for P in X.diff_divisor(w).support():
                assert X.diff_valuation(Cw, P) >= X.diff_valuation(w, P) // q

    @pytest.mark.parametrize("q", [2, 8])
    def test_valuation_floor_klein(self, klein, q):
        X = klein
        ctx = CartierCtx(X, tower_for(X, q))
        rng = random.Random(10 + q)
        for P, t in _local_parameter_places(X, 10, rng):
            for k in range(-3, 6):
                w = _engineered(X, rng, P, t, k)
                Cw = cartier_q(w, ctx)
                if not Cw.is_zero():
                    assert X.diff_valuation(Cw, P) >= X.diff_valuation(w, P) // q


class TestFixedSpace:
    def test_line_logarithmic(self):
        L = ProjectiveLine(mk_field(2))
        D = Divisor.of(L.place_at(0), L.infinity)
        ctx = CartierCtx(L, tower_for(L, 2))
        fs = fixed_space(ctx, Divisor(), D)
        assert len(fs) == 1
        assert fs.basis[0] == L.differential(L.one() / L.x())

    def test_support_overlap_rejected(self, line4):
        P = line4.place_at(0)
        ctx = CartierCtx(line4, tower_for(line4, 2))
        with pytest.raises(CartierError):
            fixed_space(ctx, Divisor.of(P), Divisor.of(P))

    def test_klein_fixed_space(self, ks):
        ctx = CartierCtx(ks.curve, ks.tower)
        G = ks.G0 - ks.Gm
        D = Divisor.sum_of(ks.D)
        fs = fixed_space(ctx, G, D)
        assert len(fs) == 6
        for w in fs:
            assert check_fixed(ctx, w)
            assert geq(ks.curve.diff_divisor(w), G - D)

    def test_fixed_space_is_the_whole_fixed_part(self, line8):
        # brute force over F_2-combinations of an F_8-basis expanded over F_2
        import itertools
        t = tower_for(line8, 2)
        ctx = CartierCtx(line8, t)
        pts = line8.rational_points()
        G = Divisor.of(line8.places_of_degree(2)[0])
        D = Divisor.sum_of(pts[:4])
        omega = line8.omega_basis(G - D).basis
        span = [w.scale(b) for w in omega for b in t.embedding.basis()]
        fs = fixed_space(ctx, G, D)
        count = 0
        for coeffs in itertools.product(range(2), repeat=len(span)):
            w = None
            for c, s in zip(coeffs, span):
                if c:
                    w = s if w is None else w + s
            if w is None or w.is_zero() or cartier(w) == w:
                count += 1
        assert count == 2 ** len(fs)


class TestVanishing:
    def test_vacuous_example(self, line4):
        ctx = CartierCtx(line4, tower_for(line4, 2))
        w = line4.differential(line4.one() / line4.x())
        assert check_vanishing(ctx, w, line4.place_at(0), 1)

    def test_refuses_non_fixed(self, line4):
        ctx = CartierCtx(line4, tower_for(line4, 2))
        with pytest.raises(CartierError):
            check_vanishing(ctx, line4.differential(line4.x()), line4.place_at(0), 1)

    def test_klein_fixed_spaces(self, ks, klein_instances):
        ctx = CartierCtx(ks.curve, ks.tower)
        rng = random.Random(12)
        for inst in klein_instances:
            fs = fixed_space(ctx, inst.G, inst.Ddiv)
            forms = list(fs.basis)
            for _ in range(10):
                w = None
                for b in fs.basis:
                    if rng.random() < 0.5:
                        w = b if w is None else w + b
                if w is not None and not w.is_zero():
                    forms.append(w)
            places = set(inst.G.support()) | set(ks.curve.canonical_divisor().support())
            for w in forms:
                for P in places:
                    for s in (1, 2, 3):
                        assert check_vanishing(ctx, w, P, s)

    @pytest.mark.parametrize("q", [2, 4])
    def test_constructed_zeros_on_the_line(self, line16, q):
        """dh/h with h = c + (x - a)^m u: a zero of order m - 1 when p does not divide m."""
        X = line16
        K = X.ctx
        ctx = CartierCtx(X, tower_for(X, q))
        rng = random.Random(20 + q)
        x = X.x()
        hits = 0
        for _ in range(50):
            a = rng.randrange(K.size)
            c = rng.randrange(1, K.size)
            m = rng.choice([q - 1, q, q + 1, 2 * q - 1, 2 * q])
            u = X.func_from_poly([rng.randrange(1, K.size), rng.randrange(K.size)])
            h = X.const(c) + (x - X.const(a)) ** m * u
            w = Differential(X, h.derivative() / h)
            if w.is_zero():
                continue
            assert check_fixed(ctx, w)
            P = X.place_at(a)
            for s in (1, 2):
                assert check_vanishing(ctx, w, P, s)
            if X.diff_valuation(w, P) >= q - 1:
                hits += 1
        assert hits >= 10


class TestSnakeDiagram:
    def test_klein(self, klein_instances):
        for inst in klein_instances:
            ctx = inst.cartier_ctx()
            K = inst.tower.ext
            basis = inst.curve.omega_basis(inst.G - inst.Ddiv).basis
            rng = random.Random(13)
            for _ in range(25):
                w = None
                for b in basis:
                    t = b.scale(rng.randrange(K.size))
                    w = t if w is None else w + t
                lhs = residue_vector(inst, cartier_q(w, ctx))
                rhs = [K.qth_root(c, inst.q) for c in residue_vector(inst, w)]
                assert lhs == rhs

    def test_line(self, line16):
        X = line16
        K = X.ctx
        t = tower_for(X, 4)
        rng = random.Random(14)
        pts = X.rational_points()
        for _ in range(50):
            G = Divisor.of(rng.choice(X.places_of_degree(2)), mult=rng.randint(1, 4))
            D = rng.sample(pts, 6)
            inst = AgInstance(X, D, G, t)
            basis = X.omega_basis(G - inst.Ddiv).basis
            w = None
            for b in basis:
                s = b.scale(rng.randrange(K.size))
                w = s if w is None else w + s
            if w is None:
                continue
            lhs = residue_vector(inst, cartier_q(w, inst.cartier_ctx()))
            rhs = [K.qth_root(c, 4) for c in residue_vector(inst, w)]
            assert lhs == rhs


def test_diff_vectors_detect_relations(klein):
    rng = random.Random(15)
    a, b = _diff(klein, rng), _diff(klein, rng)
    c = a.scale(3) + b
    from cartiercodes.polymat.linalg import rank
    assert rank(klein.ctx, diff_vectors([a, b, c])) == 2
    assert cartier_iter(a, 0) == a
