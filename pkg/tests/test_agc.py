import random

import pytest

from cartiercodes.agc import (AgInstance, HypothesisError, bound_codim, bound_corollary_easy,
                              bound_corollary_improved, bound_designed, bound_dim_thm_A,
                              bound_dim_thm_B, bound_dim_thm_B_reduced, bound_stichtenoth,
                              c_omega, c_omega_sub, cartier_code, check_codim_theorem,
                              check_dim_theorem_A, check_dim_theorem_B, check_equality_theorem,
                              check_example_goppa, check_goppa_cartier, check_wirtz,
                              equality_reduction, full_report, goppa_ag_instance, largest_G1)
from cartiercodes.cartier import tower_for
from cartiercodes.codes import LinearCode, code_eq, code_subset, from_parity
from cartiercodes.curve import Divisor, g_u
from cartiercodes.goppa import GoppaInstance, goppa_code, random_instance
from cartiercodes.polymat.poly import Poly, pmul


def _value(curve, h, P):
    return curve.local_expansion(h, P, 1).coefficient(0)


def _evaluation_code(inst):
    """C_L(D, G) from a Riemann-Roch basis, evaluated at D."""
    rows = [[_value(inst.curve, h, P) for P in inst.D] for h in inst.curve.rr_basis(inst.G)]
    return LinearCode(inst.tower.ext, inst.n, rows)


def _line_instances(line, tower, rng, count, n_max=10, deg_max=2):
    out = []
    while len(out) < count:
        L, f = random_instance(tower, rng, n_max=n_max, deg_max=deg_max)
        if f.degree >= 1:
            out.append((L, f))
    return out


class TestKleinExample:
    def test_codes(self, klein_instances):
        a, b = klein_instances
        assert c_omega(a).params(False) == (21, 20, None)
        assert cartier_code(a).params() == (21, 6, 8)
        assert c_omega_sub(a).params() == (21, 18, 1)
        assert c_omega(b).params(False) == (21, 14, None)
        assert cartier_code(b).params() == (21, 6, 8)
        assert c_omega_sub(b).params() == (21, 6, 8)

    def test_weight_one_words_come_from_zeros_of_the_single_function(self, ks, klein_instances):
        # L(G0 - G-) is spanned by one f; C_Omega = C_L^perp contains e_i whenever f(Q_i) = 0
        a, _ = klein_instances
        B = list(ks.curve.rr_basis(a.G))
        assert len(B) == 1
        zeros = [i for i, P in enumerate(a.D) if _value(ks.curve, B[0], P) == 0]
        assert len(zeros) == 3
        sub = c_omega_sub(a)
        for i in zeros:
            e = [0] * a.n
            e[i] = 1
            assert sub.contains(e)

    def test_codimension(self, klein_instances):
        a, _ = klein_instances
        assert c_omega_sub(a).k - cartier_code(a).k == 12
        assert bound_codim(a, largest_G1(a)) == 15

    def test_dimension_bounds(self, ks, klein_instances):
        a, b = klein_instances
        G1 = ks.G0 - ks.Gm
        assert bound_dim_thm_B_reduced(b) == 5
        assert bound_dim_thm_B(a) == 5
        assert bound_stichtenoth(b, G1) == 3
        assert cartier_code(b).k == 6
        # the gain over the subfield-subcode bound is s(G^-) - 1
        assert bound_dim_thm_B_reduced(b) - bound_stichtenoth(b, G1) == ks.Gm.count_support() - 1

    def test_equality_reduction(self, ks, klein_instances):
        _, b = klein_instances
        assert equality_reduction(b.G, 2) == ks.G0
        assert code_eq(cartier_code(b), cartier_code(b.with_G(b.G - ks.G0)))

    def test_corollary_improved(self, ks, klein_instances):
        _, b = klein_instances
        assert bound_corollary_improved(b, ks.G0, ks.Gm) == 5
        assert c_omega_sub(b).k >= 5

    def test_reports(self, ks, klein_instances):
        for inst in klein_instances:
            assert check_equality_theorem(inst).holds
            assert check_dim_theorem_B(inst).holds
            assert full_report(inst, largest_G1(inst)).holds
        _, b = klein_instances
        G1 = ks.G0 - ks.Gm
        assert check_codim_theorem(b, G1).holds
        assert check_dim_theorem_A(b, G1).holds
        rep = check_wirtz(b.with_G(2 * ks.G0), ks.G0)
        assert rep.holds


class TestDuality:
    def test_klein_residue_code_is_dual_of_evaluation_code(self, ks):
        rng = random.Random(30)
        pts = ks.curve.rational_points()
        for G in (ks.G0 - ks.Gm, ks.G0, 2 * ks.G0 - ks.Gm, Divisor.of(pts[0], pts[1]) * 3):
            D = [P for P in pts if P not in G.support()]
            D = rng.sample(D, min(len(D), 18))
            inst = AgInstance(ks.curve, D, G, ks.tower)
            CL = _evaluation_code(inst)
            dual = from_parity(CL.gen, inst.tower.ext, inst.n) if CL.k else LinearCode.full(inst.tower.ext, inst.n)
            assert code_eq(c_omega(inst), dual)

    def test_line_residue_code_is_dual_of_evaluation_code(self, line8, tower_2_8):
        rng = random.Random(31)
        pts = line8.rational_points()
        for _ in range(10):
            D = rng.sample(pts[:-1], 6)
            rest = [P for P in line8.rational_points() + line8.places_of_degree(2) if P not in D]
            G = Divisor({P: rng.randint(-1, 3) for P in rng.sample(rest, 3)})
            inst = AgInstance(line8, D, G, tower_2_8)
            CL = _evaluation_code(inst)
            dual = from_parity(CL.gen, inst.tower.ext, inst.n) if CL.k else LinearCode.full(inst.tower.ext, inst.n)
            assert code_eq(c_omega(inst), dual)


class TestCodes:
    def test_large_G_gives_zero_code(self, klein, ks):
        pts = klein.rational_points()
        D = pts[3:10]
        G = 6 * Divisor.of(pts[0], pts[1])
        inst = AgInstance(klein, D, G, ks.tower)
        assert (G - inst.Ddiv).degree() > 2 * klein.genus - 2
        assert c_omega(inst).k == 0 and cartier_code(inst).k == 0

    def test_cartier_inside_subfield_subcode(self, klein, ks):
        rng = random.Random(32)
        pts = klein.rational_points()
        for _ in range(6):
            sup = rng.sample(pts, 3)
            G = Divisor({P: rng.randint(-1, 4) for P in sup})
            D = [P for P in pts if P not in sup]
            inst = AgInstance(klein, D, G, ks.tower)
            assert code_subset(cartier_code(inst), c_omega_sub(inst))

    def test_instance_validation(self, klein, ks):
        pts = klein.rational_points()
        with pytest.raises(ValueError):
            AgInstance(klein, [pts[0], pts[0]], Divisor(), ks.tower)
        with pytest.raises(ValueError):
            AgInstance(klein, [pts[0]], Divisor.of(pts[0]), ks.tower)
        with pytest.raises(ValueError):
            AgInstance(klein, [klein.places_of_degree(2)[0]], Divisor(), ks.tower)


class TestHypotheses:
    def test_refusals(self, ks, klein_instances):
        a, b = klein_instances
        with pytest.raises(HypothesisError):
            bound_stichtenoth(a, ks.G0)
        with pytest.raises(HypothesisError):
            bound_dim_thm_B(a, -2 * ks.Gm)
        with pytest.raises(HypothesisError):
            bound_corollary_easy(a, 2 * ks.G0)
        with pytest.raises(HypothesisError):
            check_wirtz(b, ks.G0 - ks.Gm)
        with pytest.raises(HypothesisError):
            bound_corollary_improved(b, ks.G0, ks.Gm + ks.G0)

    def test_corollary_easy(self, line8, tower_2_8):
        rng = random.Random(33)
        for L, f in _line_instances(line8, tower_2_8, rng, 6):
            inst, E = goppa_ag_instance(line8, tower_2_8, L, f, 2)
            inst = inst.with_G(2 * E)
            k, d = bound_corollary_easy(inst, E)
            C = cartier_code(inst)
            n_, k_, d_ = C.params()
            assert k_ >= k
            assert d_ is None or d_ >= d


class TestGenusZero:
    @pytest.mark.parametrize("which", ["4/2", "8/2"])
    def test_goppa_as_subfield_subcode(self, which, line4, line8, tower_2_4, tower_2_8):
        line, tower = (line4, tower_2_4) if which == "4/2" else (line8, tower_2_8)
        rng = random.Random(34)
        for L, f in _line_instances(line, tower, rng, 10):
            assert check_example_goppa(line, tower, L, f).holds

    @pytest.mark.parametrize("which", ["4/2", "8/2"])
    def test_goppa_as_cartier_code(self, which, line4, line8, tower_2_4, tower_2_8):
        line, tower = (line4, tower_2_4) if which == "4/2" else (line8, tower_2_8)
        rng = random.Random(35)
        for L, f in _line_instances(line, tower, rng, 10):
            assert check_goppa_cartier(line, tower, L, f).holds

    def test_cartier_code_of_q_minus_1_and_q_multiples(self, line8, tower_2_8):
        rng = random.Random(36)
        for L, f in _line_instances(line8, tower_2_8, rng, 10):
            inst, E = goppa_ag_instance(line8, tower_2_8, L, f, 1)
            P = Divisor.of(line8.infinity)
            A = cartier_code(inst.with_G(E - P))
            B = cartier_code(inst.with_G(2 * E - P))
            assert code_eq(A, B)

    def test_power_times_cofactor(self, line8, tower_2_8):
        # Gamma(L, g^(q-1) h) = Gamma(L, g^q h) for squarefree g coprime to h
        rng = random.Random(37)
        K = line8.ctx
        done = 0
        for L, g in _line_instances(line8, tower_2_8, rng, 12, n_max=8):
            for a in range(1, K.size):
                h = [a, 1]
                L2 = [x for x in L if x != K.neg(a)]
                if g(K.neg(a)) == 0 or len(L2) < 2:
                    continue
                gh = Poly(K, pmul(K, list(g.c), h))
                g2h = Poly(K, pmul(K, pmul(K, list(g.c), list(g.c)), h))
                lhs = _goppa_from(tower_2_8, L2, gh)
                rhs = _goppa_from(tower_2_8, L2, g2h)
                assert code_eq(lhs, rhs)
                done += 1
                break
        assert done >= 8


def _goppa_from(tower, L, f):
    return goppa_code(GoppaInstance(tower, tuple(L), f))


class TestReports:
    def test_line_full_reports(self, line4, line8, tower_2_4, tower_2_8):
        rng = random.Random(38)
        count = 0
        for line, tower in ((line4, tower_2_4), (line8, tower_2_8)):
            pts = line.rational_points()
            others = line.places_of_degree(2)
            for _ in range(10):
                D = rng.sample(pts[:-1], rng.randint(2, len(pts) - 1))
                sup = rng.sample([P for P in pts if P not in D] + others, 2)
                G = Divisor({P: rng.randint(-1, 5) for P in sup})
                inst = AgInstance(line, D, G, tower)
                rep = full_report(inst, largest_G1(inst))
                assert rep.holds, rep.text()
                assert check_equality_theorem(inst).holds
                count += 1
        assert count == 20

    def test_klein_full_reports(self, klein, ks):
        rng = random.Random(39)
        pts = klein.rational_points()
        deg2 = klein.places_of_degree(2)
        for _ in range(8):
            sup = rng.sample(pts, 2) + rng.sample(deg2, 1)
            G = Divisor({P: rng.randint(-1, 4) for P in sup})
            D = [P for P in pts if P not in sup]
            inst = AgInstance(klein, D, G, ks.tower)
            rep = full_report(inst, largest_G1(inst))
            assert rep.holds, rep.text()

    def test_hermitian_reports(self, hermitian):
        # C_Omega over F_9 is too large to enumerate; distance checks are skipped, dimensions are not
        tower = tower_for(hermitian, 3)
        Pinf = hermitian.parse_place("(0:1:0)")
        D = [P for P in hermitian.rational_points() if P != Pinf]
        for m in (3, 8, 14):
            inst = AgInstance(hermitian, D, m * Divisor.of(Pinf), tower)
            rep = full_report(inst, largest_G1(inst), budget=3 ** 10)
            assert rep.holds, rep.text()
            assert "dim Car >= first bound" in rep.checks

    def test_report_text(self, klein_instances):
        text = check_dim_theorem_B(klein_instances[1]).text()
        assert "bound via G - R: 5" in text and "[ok]" in text

    def test_designed_distance(self, klein_instances):
        a, b = klein_instances
        assert bound_designed(a) == 3 + 2 - 6
        assert g_u(b.G, 2) == Divisor()
