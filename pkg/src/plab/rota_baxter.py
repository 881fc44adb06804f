"""Rota-Baxter operators, quadratic Rota-Baxter algebras and relative Rota-Baxter operators."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactlin as el
from .algebra import (DEFAULT_MAX_SEARCH_DIM, Algebra, AveragingAlgebra, PRE_LIE, averaging_algebra,
                      check_averaging, check_homomorphism, check_pre_lie, enumerate_matrices, verify)
from .bialgebra import AvgBialgebra, BilinearForm, as_form, check_avg_prelie_bialgebra, omega_sharp, quadratic_report
from .errors import (DimensionMismatch, KindError, PreconditionFailed, SearchSpaceTooLarge, SingularForm,
                     TheoremViolation, ZeroWeight)
from .matched_pairs import MatchedPair, build_double, check_matched_pair_prelie
from .reports import CheckReport, agreement, all_of, compare, implication
from .representations import (AvgRepresentation, Representation, avg_sides_report, check_avg_representation,
                              check_beta_admissible, check_prelie_representation, check_S_admissible,
                              coregular_representation, direct_sum_map, dual_representation, semidirect_data)
from .yang_baxter import (RTensor, admissible_cybe_report, as_r, check_factorizable, check_S_equation, delta_r,
                          r_plus_minus)


def _apply(m, t) -> np.ndarray:
    return el.einsum("...k,lk->...l", t, m)


@dataclass(frozen=True, eq=False)
class RBOperator:
    alg: Algebra
    b: np.ndarray
    weight: Fraction | int = 0

    def __post_init__(self):
        b = el.array(self.b)
        if b.shape != (self.alg.dim, self.alg.dim):
            raise DimensionMismatch(f"operator of shape {b.shape} on a {self.alg.dim}-dim algebra")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "weight", el.q(self.weight))


def rb_sides(c, b, weight) -> tuple[np.ndarray, np.ndarray]:
    """``Bx o By`` and ``B(Bx o y + x o By + w x o y)`` indexed [i, j, :]."""
    bb = el.einsum("ai,bj,abk->ijk", b, b, c)
    inner = el.einsum("ai,ajk->ijk", b, c) + el.einsum("bj,ibk->ijk", b, c) + weight * c
    return bb, _apply(b, el.canon(inner))


def check_rb(alg: Algebra, b, weight=0) -> CheckReport:
    rb = RBOperator(alg, b, weight)
    lhs, rhs = rb_sides(alg.product, rb.b, rb.weight)
    return compare("Rota-Baxter", "Bx By = B(Bx y + x By + w xy)", lhs, rhs, 2)


def rota_baxter(alg: Algebra, b, weight=0) -> RBOperator:
    rep = check_rb(alg, b, weight)
    if not rep.passed:
        raise KindError(f"not a Rota-Baxter operator: {rep.summary()}")
    return RBOperator(alg, b, weight)


def _descendent_tensor(rb: RBOperator) -> np.ndarray:
    c, b = rb.alg.product, rb.b
    return el.canon(el.einsum("ai,ajk->ijk", b, c) + el.einsum("bj,ibk->ijk", b, c) + rb.weight * c)


def search_rb_operators(alg: Algebra, weight, entry_candidates, budget: int | None = None,
                        max_dim: int = DEFAULT_MAX_SEARCH_DIM) -> list[np.ndarray]:
    if alg.dim > max_dim:
        raise SearchSpaceTooLarge(f"dimension {alg.dim} exceeds the search bound {max_dim}")
    n = alg.dim
    return [b for b in enumerate_matrices((n, n), entry_candidates, budget)
            if el.equal(*rb_sides(alg.product, b, weight))]


def descendent_product(rb: RBOperator) -> Algebra:
    """``x o_B y = Bx o y + x o By + w x o y``."""
    verify(rb.alg, PRE_LIE)
    if not check_rb(rb.alg, rb.b, rb.weight).passed:
        raise KindError("descendent product needs a Rota-Baxter operator")
    out = verify(Algebra(_descendent_tensor(rb)), PRE_LIE)
    hom = check_homomorphism(AveragingAlgebra(out, rb.b), AveragingAlgebra(rb.alg, rb.b), rb.b)
    if not hom.passed:
        raise TheoremViolation(f"B is not a homomorphism from the descendent algebra: {hom.summary()}", hom)
    return out


def check_avg_commutes_rb(rb: RBOperator, p) -> CheckReport:
    p = el.array(p)
    if not check_averaging(rb.alg, p).passed:
        raise KindError("operator is not averaging on the base algebra")
    commute = compare("commute", "PB = BP", (p @ rb.b).T, (rb.b @ p).T, 1)
    if not commute.passed:
        return all_of("averaging commutes with RB", "PB = BP", [commute])
    desc = descendent_product(rb)
    return all_of("averaging commutes with RB", "PB = BP",
                  [commute, check_averaging(desc, p)])


def adjoint_wrt_form(m, omega) -> np.ndarray:
    """The map ``m'`` with ``w(m a, b) = w(a, m' b)``."""
    om = as_form(omega).matrix
    m = el.array(m)
    inv = el.invert(om)
    if inv is None:
        raise SingularForm("form is degenerate")
    adj = el.canon(inv @ m.T @ om)
    if not el.equal(m.T @ om, om @ adj):
        raise TheoremViolation("adjoint does not satisfy the pairing identity")
    return adj


@dataclass(frozen=True, eq=False)
class QuadraticRB:
    rb: RBOperator
    omega: BilinearForm

    def __post_init__(self):
        object.__setattr__(self, "omega", as_form(self.omega))
        if self.omega.matrix.shape != (self.rb.alg.dim,) * 2:
            raise DimensionMismatch(f"form of shape {self.omega.matrix.shape} on a {self.rb.alg.dim}-dim algebra")

    @property
    def alg(self) -> Algebra:
        return self.rb.alg

    @property
    def weight(self):
        return self.rb.weight


def check_quadratic_rb(qrb: QuadraticRB) -> CheckReport:
    alg, b, w = qrb.alg, qrb.rb.b, qrb.weight
    om = qrb.omega.matrix
    compat = el.canon(b.T @ om + om @ b + w * om)
    return all_of("quadratic Rota-Baxter", "quadratic Rota-Baxter algebra", [
        check_pre_lie(alg),
        quadratic_report(alg, om),
        check_rb(alg, b, w),
        compare("form compatibility", "w(Bx,y) + w(x,By) + l w(x,y) = 0", compat, 0 * compat, 2),
    ])


def quadratic_rb(alg: Algebra, b, weight, omega) -> QuadraticRB:
    out = QuadraticRB(RBOperator(alg, b, weight), as_form(omega))
    rep = check_quadratic_rb(out)
    if not rep.passed:
        raise KindError(f"not a quadratic Rota-Baxter algebra: {rep.summary()}")
    return out


def _require_qrb(qrb: QuadraticRB):
    rep = check_quadratic_rb(qrb)
    if not rep.passed:
        raise KindError(f"not a quadratic Rota-Baxter algebra: {rep.summary()}")


def check_avg_on_qrb(qrb: QuadraticRB, p) -> CheckReport:
    _require_qrb(qrb)
    p = el.array(p)
    b = qrb.rb.b
    adj = adjoint_wrt_form(p, qrb.omega)
    children = [
        check_averaging(qrb.alg, p),
        compare("anti-commutation", "B P' = -P B", (b @ adj).T, (-(p @ b)).T, 1),
    ]
    if qrb.weight != 0:
        children.append(compare("skew adjoint", "P + P' = 0", p.T, -adj.T, 1))
    return all_of("averaging on quadratic RB", "averaging operator on a quadratic RB algebra", children)


def descendent_neg_adjoint_avg(qrb: QuadraticRB, p) -> CheckReport:
    pre = check_avg_on_qrb(qrb, p)
    if not pre.passed:
        raise PreconditionFailed(f"not an averaging operator on the quadratic RB algebra: {pre.summary()}", pre)
    desc = descendent_product(qrb.rb)
    return check_averaging(desc, -adjoint_wrt_form(p, qrb.omega))


def j_omega(omega) -> np.ndarray:
    """``J`` with ``<J^{-1} x, y> = w(x, y)``, a map from the dual space."""
    return el.invert(omega_sharp(omega))


def build_r_from_qrb(qrb: QuadraticRB) -> RTensor:
    """``r`` with ``r+ = (B + w id) J / w``."""
    if qrb.weight == 0:
        raise ZeroWeight("the r-matrix needs a nonzero weight")
    _require_qrb(qrb)
    w = qrb.weight
    n = qrb.alg.dim
    rp = el.canon((qrb.rb.b + w * el.identity(n)) @ j_omega(qrb.omega) * (1 / Fraction(w)))
    r = RTensor(rp.T.copy())
    eq = check_S_equation(qrb.alg, r)
    if not eq.passed:
        raise TheoremViolation(f"r does not solve the S-equation: {eq.summary()}", eq)
    rb = check_rb_identity(qrb, r)
    if not rb.passed:
        raise TheoremViolation(f"dual product identity fails: {rb.summary()}", rb)
    return r


def dual_product_r(alg: Algebra, r, xi, eta) -> np.ndarray:
    """``xi . eta = ad*_{r+ xi} eta - R*_{r- eta} xi`` with duals as negative transposes."""
    rp, rm = r_plus_minus(r)
    if rp.shape != (alg.dim, alg.dim):
        raise DimensionMismatch(f"r of shape {rp.shape} on a {alg.dim}-dim algebra")
    xi, eta = el.array(xi), el.array(eta)
    L, R = alg.left(), alg.right()
    ad_x = el.einsum("i,iab->ab", rp @ xi, L - R)
    r_y = el.einsum("i,iab->ab", rm @ eta, R)
    return el.canon(-ad_x.T @ eta + r_y.T @ xi)


def check_rb_identity(qrb: QuadraticRB, r) -> CheckReport:
    """``J^{-1}x . J^{-1}y = J^{-1}(x o_B y) / w`` on basis pairs."""
    n = qrb.alg.dim
    jinv = omega_sharp(qrb.omega)
    desc = _descendent_tensor(qrb.rb)
    w = Fraction(qrb.weight)
    lhs = el.zeros(n, n, n)
    rhs = el.zeros(n, n, n)
    for i in range(n):
        for j in range(n):
            lhs[i, j] = dual_product_r(qrb.alg, r, jinv[:, i], jinv[:, j])
            rhs[i, j] = el.canon(jinv @ desc[i, j] * (1 / w))
    return compare("dual product identity", "J^-1 x . J^-1 y = J^-1(x o_B y)/w", lhs, rhs, 2)


def factorizable_to_qrb(alg: Algebra, r, weight) -> QuadraticRB:
    """``B = w r- I^{-1}`` and ``w(x, y) = <I^{-1} x, y>`` with ``I = r+ - r-``."""
    rep = check_factorizable(alg, r)
    if not rep.passed:
        raise KindError(f"r is not factorizable: {rep.summary()}")
    rp, rm = r_plus_minus(r)
    iinv = el.invert(rp - rm)
    b = el.canon(el.q(weight) * rm @ iinv)
    om = iinv.T.copy()
    out = QuadraticRB(RBOperator(alg, b, weight), BilinearForm(om))
    post = check_quadratic_rb(out)
    if not post.passed:
        raise TheoremViolation(f"factorizable data is not a quadratic RB algebra: {post.summary()}", post)
    return out


def avg_bialgebra_from_qrb(qrb: QuadraticRB, p) -> AvgBialgebra:
    """``(A, o, Delta_r, P, -P)`` for the r-matrix of a quadratic RB algebra."""
    if qrb.weight == 0:
        raise PreconditionFailed("the construction needs a nonzero weight")
    pre = check_avg_on_qrb(qrb, p)
    if not pre.passed:
        raise PreconditionFailed(f"not an averaging operator on the quadratic RB algebra: {pre.summary()}", pre)
    p = el.array(p)
    r = build_r_from_qrb(qrb)
    bi = AvgBialgebra(qrb.alg, p, delta_r(qrb.alg, r), -p)
    post = check_avg_prelie_bialgebra(bi)
    if not post.passed:
        raise TheoremViolation(f"construction is not an averaging bialgebra: {post.summary()}", post)
    return bi


@dataclass(frozen=True, eq=False)
class RelativeRB:
    avg: AveragingAlgebra
    avgrep: AvgRepresentation
    t: np.ndarray

    def __post_init__(self):
        t = el.array(self.t)
        if t.shape != (self.avg.dim, self.avgrep.module_dim):
            raise DimensionMismatch(f"map of shape {t.shape} from dim {self.avgrep.module_dim} to {self.avg.dim}")
        object.__setattr__(self, "t", t)


def relative_rb_report(avg: AveragingAlgebra, rho, phi, alpha, t) -> CheckReport:
    """Both defining identities of a relative RB operator; no validity check on the module."""
    t = el.array(t)
    c = avg.product
    # tu o tv and T(rho(Tu)v + phi(Tv)u), indexed [u, v, :]
    lhs = el.einsum("au,bv,abk->uvk", t, t, c)
    inner = el.einsum("au,akv->uvk", t, rho) + el.einsum("av,aku->uvk", t, phi)
    rhs = _apply(t, inner)
    return all_of("relative Rota-Baxter", "relative Rota-Baxter operator", [
        compare("product", "Tu Tv = T(rho(Tu)v + phi(Tv)u)", lhs, rhs, 2),
        compare("operator", "PT = Ta", (avg.op @ t).T, (t @ el.array(alpha)).T, 1),
    ])


def search_relative_rb(avgrep: AvgRepresentation, entry_candidates, budget: int | None = None) -> list[np.ndarray]:
    """All maps ``T: V -> A`` with the given entries that are relative RB for ``avgrep``."""
    rep = check_avg_representation(avgrep)
    if not rep.passed:
        raise KindError(f"not an averaging representation: {rep.summary()}")
    avg, r = avgrep.avg, avgrep.rep
    return [t for t in enumerate_matrices((avg.dim, avgrep.module_dim), entry_candidates, budget)
            if relative_rb_report(avg, r.rho, r.phi, avgrep.alpha, t).passed]


def check_relative_rb(rrb: RelativeRB) -> CheckReport:
    rep = check_avg_representation(rrb.avgrep)
    if not rep.passed:
        raise KindError(f"not an averaging representation: {rep.summary()}")
    r = rrb.avgrep.rep
    return relative_rb_report(rrb.avg, r.rho, r.phi, rrb.avgrep.alpha, rrb.t)


def _require_rrb(rrb: RelativeRB):
    rep = check_relative_rb(rrb)
    if not rep.passed:
        raise KindError(f"not a relative Rota-Baxter operator: {rep.summary()}")


def _descendent_on_module(rrb: RelativeRB) -> np.ndarray:
    r, t = rrb.avgrep.rep, rrb.t
    # u o_T v = rho(Tu)v + phi(Tv)u, indexed [u, v, :]
    return el.einsum("au,akv->uvk", t, r.rho) + el.einsum("av,aku->uvk", t, r.phi)


def descendent_avg_prelie(rrb: RelativeRB) -> AveragingAlgebra:
    _require_rrb(rrb)
    out = averaging_algebra(Algebra(_descendent_on_module(rrb)), rrb.avgrep.alpha)
    hom = check_homomorphism(out, rrb.avg, rrb.t)
    if not hom.passed:
        raise TheoremViolation(f"T is not a homomorphism: {hom.summary()}", hom)
    return out


def matched_pair_from_rrb(rrb: RelativeRB) -> MatchedPair:
    """Pair of the base algebra with the descendent algebra on the module."""
    desc = descendent_avg_prelie(rrb)
    rep, t = rrb.avgrep.rep, rrb.t
    L, R = rrb.avg.base.left(), rrb.avg.base.right()
    # rho'(u)x = -T(phi(x)u) + Tu o x ; phi'(u)x = -T(rho(x)u) + x o Tu
    rho_b = -el.einsum("ak,xku->uax", t, rep.phi) + el.einsum("iu,iax->uax", t, L)
    phi_b = -el.einsum("ak,xku->uax", t, rep.rho) + el.einsum("iu,iax->uax", t, R)
    mp = MatchedPair(rrb.avg.base, desc.base, rep.rho, rep.phi, el.canon(rho_b), el.canon(phi_b),
                     rrb.avg.op, desc.op)
    r = check_matched_pair_prelie(mp)
    if not r.passed:
        raise TheoremViolation(f"not a matched pair: {r.summary()}", r)
    build_double(mp)
    return mp


def rrb_to_cybe_solution(avg: AveragingAlgebra, s, r) -> CheckReport:
    """Instance check: if ``r#`` is relative RB for the coregular module with ``S*``, ``r`` solves the admissible CYBE."""
    r = as_r(r)
    if not r.symmetric:
        raise KindError("r must be symmetric")
    s = el.array(s)
    co, s_dual = coregular_representation(avg, s)
    rp, _ = r_plus_minus(r)
    hyp = relative_rb_report(avg, co.rho, co.phi, s_dual, rp)
    concl = admissible_cybe_report(avg, s, r)
    return implication("relative RB gives CYBE solution", "r# relative RB implies admissible CYBE", hyp, concl)


def rrb_equiv_rb0(avg: AveragingAlgebra, omega, t) -> CheckReport:
    """Relative RB for the coregular module with ``P*`` iff ``T w#`` is weight-0 RB commuting with P."""
    q = quadratic_report(avg.base, omega, avg.op)
    if not q.passed:
        raise KindError(f"not a quadratic averaging algebra: {q.summary()}")
    t = el.array(t)
    co, p_dual = coregular_representation(avg)
    rel = relative_rb_report(avg, co.rho, co.phi, p_dual, t)
    tw = t @ omega_sharp(omega)
    rb0 = all_of("weight-0 RB commuting with P", "T w# weight-0 RB with P(Tw#) = (Tw#)P", [
        check_rb(avg.base, tw, 0),
        compare("commute", "P T w# = T w# P", (avg.op @ tw).T, (tw @ avg.op).T, 1),
    ])
    return agreement("relative RB vs weight-0 RB", "relative RB iff weight-0 RB", [rel, rb0])


def _equiva3_items(avg, rep, s, alpha, beta) -> tuple[CheckReport, CheckReport, CheckReport]:
    s, alpha, beta = el.array(s), el.array(alpha), el.array(beta)
    # item (a): semidirect with P+alpha is averaging and S+beta admissible
    big, op = semidirect_data(avg, rep, alpha)
    s_big = _dsum(s, beta)
    item_a = all_of("semidirect", "semidirect averaging with admissible S+beta", [
        check_averaging(big, op), check_S_admissible(AveragingAlgebra(big, op), s_big)])
    # item (b): dual semidirect with P+beta* and S+alpha*
    dual, beta_t = dual_representation(rep, beta)
    big_d, op_d = semidirect_data(avg, dual, beta_t)
    s_big_d = _dsum(s, alpha.T.copy())
    item_b = all_of("dual semidirect", "dual semidirect averaging with admissible S+alpha*", [
        check_averaging(big_d, op_d), check_S_admissible(AveragingAlgebra(big_d, op_d), s_big_d)])
    # item (c): four conditions on the pieces
    rho, phi = rep.rho, rep.phi

    def chain(name, maps):
        a = el.einsum("ab,xbc,cd->xad", beta, maps, alpha)        # beta act(x) alpha
        b = el.einsum("kx,kac,cd->xad", s, maps, alpha)           # act(Sx) alpha
        c = el.einsum("ab,kx,kbc->xac", beta, s, maps)            # beta act(Sx)
        return all_of(name, f"{name}: beta act(x) alpha = act(Sx) alpha = beta act(Sx)", [
            compare(f"{name} (first)", "beta act(x) alpha = act(Sx) alpha", a, b, 1),
            compare(f"{name} (second)", "act(Sx) alpha = beta act(Sx)", b, c, 1),
        ])

    item_c = all_of("conditions", "module, admissibility and coupling conditions", [
        avg_sides_report(rep, avg.op, alpha),
        check_S_admissible(avg, s),
        check_beta_admissible(avg, rep, beta),
        chain("rho coupling", rho),
        chain("phi coupling", phi),
    ])
    return item_a, item_b, item_c


def _dsum(a, b) -> np.ndarray:
    return direct_sum_map(el.array(a), el.array(b))


def check_equiva3(avg: AveragingAlgebra, rep: Representation, s, alpha, beta) -> CheckReport:
    """Evaluate the three equivalent admissibility descriptions independently and compare."""
    if not check_prelie_representation(rep.alg, rep).passed:
        raise KindError("the representation is not verified")
    a, b, c = _equiva3_items(avg, rep, s, alpha, beta)
    return agreement("three-way equivalence", "semidirect, dual semidirect and componentwise agree", [a, b, c])


def embed_t(t, n: int) -> np.ndarray:
    """``T + t(T)`` on ``A (+) V*`` where ``T`` is viewed in V* (x) A."""
    t = el.array(t)
    m = t.shape[1]
    r = el.zeros(n + m, n + m)
    r[n:, :n] = t.T
    r[:n, n:] = t
    return r


def lift_T_to_r(avg: AveragingAlgebra, avgrep: AvgRepresentation, t, s, beta) -> tuple[RTensor, CheckReport]:
    rep = avgrep.rep
    if not check_prelie_representation(rep.alg, rep).passed:
        raise KindError("the representation is not verified")
    t, s, beta = el.array(t), el.array(s), el.array(beta)
    alpha = avgrep.alpha
    n = avg.dim
    if t.shape != (n, rep.module_dim):
        raise DimensionMismatch(f"map of shape {t.shape} from dim {rep.module_dim} to {n}")
    dual, beta_t = dual_representation(rep, beta)
    big, op = semidirect_data(avg, dual, beta_t)
    r = RTensor(embed_t(t, n))
    big_avg = AveragingAlgebra(big, op)
    lhs = admissible_cybe_report(big_avg, _dsum(s, alpha.T.copy()), r)
    rhs = all_of("relative RB with Tb = ST", "relative RB operator with T beta = S T", [
        relative_rb_report(avg, rep.rho, rep.phi, alpha, t),
        compare("T beta = S T", "T beta = S T", (t @ beta).T, (s @ t).T, 1),
    ])
    return r, agreement("lifted CYBE solution", "T + t(T) solves the admissible CYBE iff relative RB", [lhs, rhs])

