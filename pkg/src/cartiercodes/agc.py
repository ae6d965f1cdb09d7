"""Residue AG codes, Cartier codes, and checkers for their bounds and equalities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cartier import CartierCtx, fixed_space
from .codes import DEFAULT_BUDGET, BudgetExceeded, LinearCode, code_eq, code_subset, embed_code, subfield_subcode
from .curve.divisor import Divisor, Place, g_u
from .ff import FieldTower
from .goppa import GoppaInstance, goppa_code, goppa_power
from .polymat.poly import Poly, irreducible_factors, pdivmod


class HypothesisError(ValueError):
    """A theorem was asked about an instance outside its hypotheses."""


@dataclass
class AgInstance:
    """Curve over tower.ext, ordered rational places D = P_1 + ... + P_n, divisor G."""

    curve: object
    D: tuple
    G: Divisor
    tower: FieldTower

    def __post_init__(self):
        self.D = tuple(self.D)
        if len(set(self.D)) != len(self.D):
            raise ValueError("evaluation places must be distinct")
        if any(P.degree != 1 for P in self.D):
            raise ValueError("evaluation places must be rational")
        if set(self.D) & set(self.G.support()):
            raise ValueError("support of G must avoid the evaluation places")
        if self.curve.ctx != self.tower.ext:
            raise ValueError("curve must be defined over the extension field")
        self._cache = {}

    @property
    def n(self) -> int:
        return len(self.D)

    @property
    def Ddiv(self) -> Divisor:
        return Divisor.sum_of(self.D)

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def ell(self) -> int:
        return self.tower.ell

    @property
    def genus(self) -> int:
        return self.curve.genus

    def with_G(self, G: Divisor) -> "AgInstance":
        return AgInstance(self.curve, self.D, G, self.tower)

    def cartier_ctx(self) -> CartierCtx:
        return CartierCtx(self.curve, self.tower)

    def h0(self, A: Divisor) -> int:
        key = ("h0", A)
        if key not in self._cache:
            self._cache[key] = self.curve.h0(A)
        return self._cache[key]

    def h1(self, A: Divisor) -> int:
        key = ("h1", A)
        if key not in self._cache:
            self._cache[key] = self.curve.h1(A)
        return self._cache[key]


def residue_vector(inst: AgInstance, w) -> list[int]:
    return [inst.curve.residue(w, P) for P in inst.D]


def c_omega(inst: AgInstance) -> LinearCode:
    """C_Omega(D, G): residues at D of Omega(G - D), over the extension field."""
    if "c_omega" not in inst._cache:
        basis = inst.curve.omega_basis(inst.G - inst.Ddiv).basis
        rows = [residue_vector(inst, w) for w in basis]
        inst._cache["c_omega"] = LinearCode(inst.tower.ext, inst.n, rows)
    return inst._cache["c_omega"]


def c_omega_sub(inst: AgInstance) -> LinearCode:
    """C_Omega(D, G) restricted to F_q."""
    if "c_omega_sub" not in inst._cache:
        inst._cache["c_omega_sub"] = subfield_subcode(c_omega(inst), inst.tower)
    return inst._cache["c_omega_sub"]


def cartier_code(inst: AgInstance) -> LinearCode:
    """Car_q(D, G): residues at D of the C_q-fixed part of Omega(G - D)."""
    if "cartier" not in inst._cache:
        fs = fixed_space(inst.cartier_ctx(), inst.G, inst.Ddiv)
        rows = []
        for w in fs.basis:
            v = residue_vector(inst, w)
            d = [inst.tower.descend_int(c) for c in v]
            if any(c is None for c in d):  # pragma: no cover
                raise ArithmeticError("residue of a fixed differential is not in F_q")
            rows.append(d)
        inst._cache["cartier"] = LinearCode(inst.tower.base, inst.n, rows)
        inst._cache["fixed_dim"] = len(fs.basis)
    return inst._cache["cartier"]


# -- bounds ----------------------------------------------------------------------

def _require(cond: bool, msg: str):
    if not cond:
        raise HypothesisError(msg)


def bound_designed(inst: AgInstance, G: Optional[Divisor] = None) -> int:
    """deg G + 2 - 2g, a lower bound on d(C_Omega(D, G)) for nonzero codes."""
    G = inst.G if G is None else G
    return G.degree() + 2 - 2 * inst.genus


def bound_designed_cartier(inst: AgInstance) -> int:
    """deg(G + G_U) + 2 - 2g, a lower bound on d(Car_q(D, G))."""
    return bound_designed(inst, inst.G + g_u(inst.G, inst.q))


def _sub_hyp(inst: AgInstance, G1: Divisor):
    G = inst.G
    _require(G >= inst.q * G1, "requires G >= q*G1")
    _require(G >= G1, "requires G >= G1")


def bound_stichtenoth(inst: AgInstance, G1: Divisor) -> int:
    """Lower bound on dim C_Omega(D, G)|F_q for G >= q*G1."""
    _require(inst.G >= inst.q * G1, "requires G >= q*G1")
    G = inst.G
    v = inst.n - inst.ell * (inst.h0(G) - inst.h0(G1))
    return v - 1 if G.is_effective() else v


def bound_dim_thm_A(inst: AgInstance, G1: Divisor) -> int:
    """First lower bound on dim Car_q(D, G), for G >= q*G1 and G >= G1."""
    _sub_hyp(inst, G1)
    G = inst.G
    v = inst.n - inst.ell * (inst.h0(G) - inst.h0(G1) + inst.h1(G1))
    return v - 1 if G.is_effective() else v


def bound_dim_thm_A_nonspecial(inst: AgInstance, G1: Divisor) -> int:
    """The simplified first bound, valid when h1(G) = 0."""
    _sub_hyp(inst, G1)
    _require(inst.h1(inst.G) == 0, "requires h1(G) = 0")
    G = inst.G
    v = inst.n - inst.ell * (G - G1).degree()
    return v - 1 if G.is_effective() else v


def _thm_B_hyp(inst: AgInstance, G: Divisor):
    Gp, Gm = G.positive_part(), G.negative_part()
    _require(not Gm or Gm.is_reduced(), "requires G^- reduced")
    D = set(inst.D)
    _require(not (D & set(Gp.support())) and not (D & set(Gm.support())),
             "requires G^+, G^- disjoint from D")


def bound_dim_thm_B(inst: AgInstance, G: Optional[Divisor] = None) -> int:
    """Direct lower bound n - 1 + s - l*deg(G^+) - h1(G) on dim Car_q(D, G)."""
    G = inst.G if G is None else G
    _thm_B_hyp(inst, G)
    s = G.negative_part().count_support()
    return inst.n - 1 + s - inst.ell * G.positive_part().degree() - inst.h1(G)


def equality_reduction(G: Divisor, q: int) -> Divisor:
    """The reduced divisor R of places with v_P(G) > 0 and v_P(G) = 0 mod q.

    Car_q(D, G - R) = Car_q(D, G): every such place lies in (G - R)_U, so
    G - R <= G <= (G - R) + (G - R)_U and the equality theorem squeezes both.
    """
    return Divisor({P: 1 for P, v in G.items() if v > 0 and v % q == 0})


def bound_dim_thm_B_reduced(inst: AgInstance) -> int:
    """The direct bound applied to G - R, which has the same Cartier code."""
    G2 = inst.G - equality_reduction(inst.G, inst.q)
    return bound_dim_thm_B(inst, G2)


def bound_codim(inst: AgInstance, G1: Divisor) -> int:
    """Upper bound l*h1(G1) on dim(C_Omega(D,G)|F_q) - dim Car_q(D,G)."""
    _sub_hyp(inst, G1)
    return inst.ell * inst.h1(G1)


def bound_corollary_easy(inst: AgInstance, G0: Divisor) -> tuple:
    """(k, d) lower bounds for Car_q(D, q*G0) with G0 reduced and h1(q*G0) = 0."""
    q = inst.q
    _require(G0.is_reduced(), "requires G0 reduced")
    _require(inst.h1(q * G0) == 0, "requires h1(q*G0) = 0")
    return (inst.n - 1 - inst.ell * (q - 1) * G0.degree(),
            q * G0.degree() + 2 - 2 * inst.genus)


def bound_corollary_improved(inst: AgInstance, G0: Divisor, Gm: Divisor) -> int:
    """n - 1 + s - l(q-1)deg G0, for C_Omega(D, q*G0 - G^-)|F_q when h1(G0 - G^-) = 0."""
    _require(G0.is_reduced() and Gm.is_reduced(), "requires G0 and G^- reduced")
    _require(not (set(G0.support()) & set(Gm.support())), "requires disjoint supports")
    _require(inst.h1(G0 - Gm) == 0, "requires h1(G0 - G^-) = 0")
    return inst.n - 1 + Gm.count_support() - inst.ell * (inst.q - 1) * G0.degree()


# -- reports ---------------------------------------------------------------------

@dataclass
class BoundReport:
    """Named bound values, the observed quantities and pass flags."""

    title: str
    values: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def check(self, name: str, ok: bool):
        self.checks[name] = bool(ok)

    def lines(self) -> list[str]:
        out = [self.title]
        for k, v in self.values.items():
            out.append(f"  {k}: {v}")
        for k, ok in self.checks.items():
            out.append(f"  [{'ok' if ok else 'FAIL'}] {k}")
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _fmt_params(C: LinearCode, budget: int) -> str:
    try:
        return C.params_text(True, budget)
    except BudgetExceeded:
        return C.params_text(False) + " (distance beyond budget)"


def _distance(C: LinearCode, budget: int):
    """(d, known): d is None for the zero code; known is False past the budget."""
    try:
        return C.min_distance(budget), True
    except BudgetExceeded:
        return None, False


def check_equality_theorem(inst: AgInstance, budget: int = DEFAULT_BUDGET) -> BoundReport:
    """Car_q(D, G) = Car_q(D, G + G_U)."""
    GU = g_u(inst.G, inst.q)
    rep = BoundReport("Cartier equality: Car(D, G) = Car(D, G + G_U)")
    A = cartier_code(inst)
    rep.values["G_U"] = GU.text()
    rep.values["Car(D, G)"] = _fmt_params(A, budget)
    if not GU:
        rep.check("G_U = 0, trivially equal", True)
        return rep
    B = cartier_code(inst.with_G(inst.G + GU))
    rep.values["Car(D, G + G_U)"] = _fmt_params(B, budget)
    rep.check("codes equal", code_eq(A, B))
    dd = bound_designed_cartier(inst)
    rep.values["improved designed distance"] = dd
    d, known = _distance(A, budget)
    if known:
        rep.check("d(Car(D, G)) >= deg(G + G_U) + 2 - 2g", d is None or d >= dd)
    return rep


def check_codim_theorem(inst: AgInstance, G1: Divisor, budget: int = DEFAULT_BUDGET) -> BoundReport:
    """dim C_Omega(D,G)|F_q - dim Car_q(D,G) <= l*h1(G1)."""
    bound = bound_codim(inst, G1)
    rep = BoundReport("Codimension of Car(D, G) in C_Omega(D, G)|F_q")
    car = cartier_code(inst)
    sub = c_omega_sub(inst)
    codim = sub.k - car.k
    h1 = inst.h1(G1)
    rep.values.update({"h1(G1)": h1, "bound l*h1(G1)": bound, "codimension": codim})
    rep.check("Car(D, G) inside C_Omega(D, G)|F_q", code_subset(car, sub))
    rep.check("codimension <= l*h1(G1)", codim <= bound)
    if h1 == 0:
        rep.check("h1(G1) = 0 gives equality", code_eq(car, sub))
    return rep


def check_dim_theorem_A(inst: AgInstance, G1: Divisor) -> BoundReport:
    rep = BoundReport("First dimension bound for Car(D, G)")
    car = cartier_code(inst)
    sub = c_omega_sub(inst)
    a = bound_dim_thm_A(inst, G1)
    st = bound_stichtenoth(inst, G1)
    rep.values.update({"h0(G)": inst.h0(inst.G), "h0(G1)": inst.h0(G1), "h1(G1)": inst.h1(G1),
                       "bound": a, "Stichtenoth bound": st,
                       "dim Car": car.k, "dim C_Omega|F_q": sub.k})
    rep.check("dim Car >= bound", car.k >= a)
    rep.check("dim C_Omega|F_q >= Stichtenoth bound", sub.k >= st)
    if inst.h1(inst.G) == 0:
        b = bound_dim_thm_A_nonspecial(inst, G1)
        rep.values["bound (h1(G) = 0 form)"] = b
        rep.check("dim Car >= bound (h1(G) = 0 form)", car.k >= b)
    return rep


def check_dim_theorem_B(inst: AgInstance) -> BoundReport:
    rep = BoundReport("Direct dimension bound for Car(D, G)")
    car = cartier_code(inst)
    G = inst.G
    direct = bound_dim_thm_B(inst)
    reduced = bound_dim_thm_B_reduced(inst)
    rep.values.update({"s(G^-)": G.negative_part().count_support(),
                       "deg G^+": G.positive_part().degree(), "h1(G)": inst.h1(G),
                       "bound": direct, "bound via G - R": reduced, "dim Car": car.k})
    rep.check("dim Car >= bound", car.k >= direct)
    rep.check("dim Car >= bound via G - R", car.k >= reduced)
    return rep


def check_wirtz(inst: AgInstance, G1: Divisor) -> BoundReport:
    """C_Omega(D,G)|F_q = C_Omega(D, G+G_U)|F_q when G >= q*G1, G1 >= 0, h1(G1) = 0.

    Derived from the codimension theorem (equality with Car) and the
    Cartier equality theorem.
    """
    _require(G1.is_effective(), "requires G1 >= 0")
    _require(inst.h1(G1) == 0, "requires h1(G1) = 0")
    _sub_hyp(inst, G1)
    GU = g_u(inst.G, inst.q)
    rep = BoundReport("Subfield subcode equality with G_U")
    rep.values["G_U"] = GU.text()
    A = c_omega_sub(inst)
    B = c_omega_sub(inst.with_G(inst.G + GU))
    rep.check("C_Omega(D, G)|F_q = C_Omega(D, G + G_U)|F_q", code_eq(A, B))
    return rep


def full_report(inst: AgInstance, G1: Optional[Divisor] = None,
                budget: int = DEFAULT_BUDGET) -> BoundReport:
    """Every applicable bound on one instance, with pass flags."""
    rep = BoundReport(f"Bounds for G = {inst.G.text()}")
    co = c_omega(inst)
    sub = c_omega_sub(inst)
    car = cartier_code(inst)
    d_co, k_co = _distance(co, budget)
    d_sub, k_sub = _distance(sub, budget)
    d_car, k_car = _distance(car, budget)
    rep.values.update({"C_Omega": _fmt_params(co, budget), "C_Omega|F_q": _fmt_params(sub, budget),
                       "Car": _fmt_params(car, budget)})
    rep.check("Car inside C_Omega|F_q", code_subset(car, sub))
    rep.check("C_Omega|F_q inside C_Omega", code_subset(embed_code(sub, inst.tower), co))
    dd = bound_designed(inst)
    rep.values["designed distance"] = dd
    for name, d, known in (("C_Omega", d_co, k_co), ("C_Omega|F_q", d_sub, k_sub),
                           ("Car", d_car, k_car)):
        if known:
            rep.check(f"d({name}) >= designed distance", d is None or d >= dd)
    ddc = bound_designed_cartier(inst)
    rep.values["designed distance with G_U"] = ddc
    if k_car:
        rep.check("d(Car) >= designed distance with G_U", d_car is None or d_car >= ddc)
    if inst.h1(inst.G) == 0:
        rep.check("dim C_Omega = n - (deg G + 1 - g) + h0(G - D)",
                  co.k == inst.n - (inst.G.degree() + 1 - inst.genus) + inst.h0(inst.G - inst.Ddiv))
    try:
        b = bound_dim_thm_B(inst)
        br = bound_dim_thm_B_reduced(inst)
        rep.values.update({"direct bound": b, "direct bound via G - R": br})
        rep.check("dim Car >= direct bound", car.k >= b)
        rep.check("dim Car >= direct bound via G - R", car.k >= br)
    except HypothesisError:
        pass
    if G1 is not None:
        try:
            _sub_hyp(inst, G1)
        except HypothesisError:
            G1 = None
    if G1 is not None:
        a = bound_dim_thm_A(inst, G1)
        st = bound_stichtenoth(inst, G1)
        cb = bound_codim(inst, G1)
        rep.values.update({"first bound": a, "Stichtenoth bound": st, "codim bound": cb,
                           "codim": sub.k - car.k})
        rep.check("dim Car >= first bound", car.k >= a)
        rep.check("dim C_Omega|F_q >= Stichtenoth bound", sub.k >= st)
        rep.check("codim <= l*h1(G1)", sub.k - car.k <= cb)
        if inst.h1(inst.G) == 0:
            rep.check("dim Car >= first bound (h1(G) = 0 form)",
                      car.k >= bound_dim_thm_A_nonspecial(inst, G1))
    return rep


def largest_G1(inst: AgInstance) -> Divisor:
    """The largest G1 with G >= q*G1 (hence G >= G1 when G1 <= 0 where G < 0)."""
    q = inst.q
    return Divisor({P: min(v // q, v) for P, v in inst.G.items()})


# -- genus zero: classical Goppa codes ------------------------------------------------

def goppa_ag_instance(line, tower: FieldTower, L: Sequence[int], f: Poly, mult: int = 1):
    """On the projective line: D = sum (alpha_i), G = mult*E - P_inf with E = (f)_0."""
    K = line.ctx
    E = {}
    for phi in irreducible_factors(K, list(f.c)):
        e, rem = 0, list(f.c)
        while True:
            qq, r = pdivmod(K, rem, phi)
            if r:
                break
            rem, e = qq, e + 1
        E[line.place_of_poly(phi)] = e
    Ediv = Divisor(E)
    G = mult * Ediv - Divisor.of(line.infinity)
    D = [line.place_at(a) for a in L]
    return AgInstance(line, D, G, tower), Ediv


def check_example_goppa(line, tower: FieldTower, L: Sequence[int], f: Poly) -> BoundReport:
    """Gamma_q(L, f) = C_Omega(D, E - P_inf)|F_q."""
    inst, _ = goppa_ag_instance(line, tower, L, f)
    gam = goppa_code(GoppaInstance(tower, tuple(L), f))
    sub = c_omega_sub(inst)
    rep = BoundReport("Goppa code as a subfield subcode of a residue code")
    rep.values.update({"Gamma(L, f)": gam.params_text(False), "C_Omega|F_q": sub.params_text(False)})
    rep.check("codes equal", code_eq(gam, sub))
    return rep


def check_goppa_cartier(line, tower: FieldTower, L: Sequence[int], f: Poly) -> BoundReport:
    """Car_q(D, (q-1)E - P_inf) = Gamma_q(L, f^(q-1)) for squarefree f."""
    q = tower.q
    inst, _ = goppa_ag_instance(line, tower, L, f, q - 1)
    gam = goppa_power(tower, L, f, q - 1)
    car = cartier_code(inst)
    rep = BoundReport("Goppa code as a Cartier code")
    rep.values.update({"Gamma(L, f^(q-1))": gam.params_text(False), "Car": car.params_text(False)})
    rep.check("codes equal", code_eq(gam, car))
    return rep
