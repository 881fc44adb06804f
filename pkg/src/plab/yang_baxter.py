"""Tensors ``r`` in A (x) A, coboundary coproducts and the classical Yang-Baxter equation.

``r = sum r[i, j] e_i (x) e_j`` is stored as a matrix, so ``(M (x) N) r = M r N^T``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import exactlin as el
from .algebra import Algebra, AveragingAlgebra, PRE_LIE, verify
from .bialgebra import AvgBialgebra, Coalgebra, avg_coalgebra_report, check_avg_prelie_bialgebra, check_dual_admissible
from .errors import DimensionMismatch, KindError, PreconditionFailed, TheoremViolation
from .reports import CheckReport, agreement, all_of, compare, predicate, vanishes
from .representations import check_S_admissible


@dataclass(frozen=True, eq=False)
class RTensor:
    coeff: np.ndarray

    def __post_init__(self):
        m = el.array(self.coeff)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"r must be a square coefficient matrix, got {m.shape}")
        object.__setattr__(self, "coeff", m)

    @property
    def dim(self) -> int:
        return self.coeff.shape[0]

    @property
    def symmetric(self) -> bool:
        return el.equal(self.coeff, self.coeff.T)

    def flip(self) -> "RTensor":
        return RTensor(self.coeff.T.copy())


def as_r(r) -> RTensor:
    return r if isinstance(r, RTensor) else RTensor(r)


def _coeff(alg: Algebra, r) -> np.ndarray:
    m = as_r(r).coeff
    if m.shape != (alg.dim, alg.dim):
        raise DimensionMismatch(f"r of shape {m.shape} on a {alg.dim}-dim algebra")
    return m


def split_sym_skew(r) -> tuple[RTensor, RTensor]:
    m = as_r(r).coeff
    half = Fraction(1, 2)
    return RTensor(el.canon((m + m.T) * half)), RTensor(el.canon((m - m.T) * half))


def delta_r(alg: Algebra, r) -> Coalgebra:
    """``Delta_r(x) = (L_x (x) id + id (x) (L_x - R_x)) r``."""
    m = _coeff(alg, r)
    L, R = alg.left(), alg.right()
    d = el.einsum("xab,bc->xac", L, m) + el.einsum("ab,xcb->xac", m, L - R)
    return Coalgebra(d)


def double_bracket_rr(alg: Algebra, r) -> np.ndarray:
    """Coefficients ``t[u, v, w]`` of [[r, r]] in A (x) A (x) A from the expanded four sums."""
    m = _coeff(alg, r)
    c = alg.product
    t1 = el.einsum("uq,sw,qsv->uvw", m, m, c)
    t2 = el.einsum("uq,vt,qtw->uvw", m, m, c)
    t3 = el.einsum("pv,sw,psu->uvw", m, m, c)
    t4 = el.einsum("uq,vt,tqw->uvw", m, m, c)
    return t1 + t2 - t3 - t4


def check_S_equation(alg: Algebra, r) -> CheckReport:
    return vanishes("S-equation", "[[r,r]] = 0", double_bracket_rr(alg, r), 3)


def _ad(alg: Algebra) -> np.ndarray:
    return alg.left() - alg.right()


def check_Q_condition(alg: Algebra, r) -> CheckReport:
    t = double_bracket_rr(alg, r)
    L, ad = alg.left(), _ad(alg)
    q = (el.einsum("xau,uvw->xavw", L, t) + el.einsum("xav,uvw->xuaw", L, t)
         + el.einsum("xaw,uvw->xuva", ad, t))
    return vanishes("Q condition", "Q(x)[[r,r]] = 0", q, 1)


def ell_op(alg: Algebra, z, t) -> np.ndarray:
    """``(L_z (x) id + id (x) L_z) t`` for a vector ``z``."""
    lz = el.einsum("i,iab->ab", el.array(z), alg.left())
    return lz @ t + t @ lz.T


def check_skew_condition(alg: Algebra, r) -> CheckReport:
    _, a = split_sym_skew(_coeff(alg, r))
    a = a.coeff
    n = alg.dim
    L = alg.left()
    lhs = el.zeros(n, n, n, n)
    rhs = el.zeros(n, n, n, n)
    for i in range(n):
        for j in range(n):
            lhs[i, j] = ell_op(alg, alg.product[i, j], a)
            inner = L[j] @ a + a @ L[j].T
            rhs[i, j] = L[i] @ inner + inner @ L[i].T
    return compare("skew-part condition", "ell(xy)a = ell(x)ell(y)a", el.canon(lhs), el.canon(rhs), 2)


def check_quasi_triangular(alg: Algebra, r) -> CheckReport:
    _, a = split_sym_skew(_coeff(alg, r))
    a = a.coeff
    t = el.einsum("xab,bc->xac", alg.left(), a) + el.einsum("ab,xcb->xac", a, _ad(alg))
    return all_of("quasi-triangular", "quasi-triangular", [
        check_S_equation(alg, r),
        vanishes("skew part invariant", "(L_x (x) id + id (x) ad_x)a = 0", t, 1),
    ])


def r_plus_minus(r) -> tuple[np.ndarray, np.ndarray]:
    """Matrices of ``r+`` and ``r-`` as maps from the dual space, ``r+[k, j] = r[j, k]``."""
    m = as_r(r).coeff
    return m.T.copy(), m.copy()


def check_factorizable(alg: Algebra, r) -> CheckReport:
    qt = check_quasi_triangular(alg, r)
    if not qt.passed:
        raise KindError(f"factorizability needs a quasi-triangular r: {qt.summary()}")
    rp, rm = r_plus_minus(r)
    i_map = rp - rm
    return predicate("factorizable", "r+ - r- invertible", el.invert(i_map) is not None,
                     "r+ - r- is singular")


def _cond_sides(r, p, s) -> tuple[CheckReport, CheckReport]:
    m = as_r(r).coeff
    c1 = compare("S-P condition", "(S (x) id)r = (id (x) P)r", s @ m, m @ p.T, 1)
    c2 = compare("P-S condition", "(P (x) id)r = (id (x) S)r", p @ m, m @ s.T, 1)
    return c1, c2


def check_admissible_cybe(avg: AveragingAlgebra, s, r) -> CheckReport:
    s = el.array(s)
    pre = check_S_admissible(avg, s)
    if not pre.passed:
        raise KindError(f"operator pair is not S-admissible: {pre.summary()}")
    return admissible_cybe_report(avg, s, r)


def admissible_cybe_report(avg: AveragingAlgebra, s, r) -> CheckReport:
    r = as_r(r)
    c1, c2 = _cond_sides(r, avg.op, el.array(s))
    children = [check_S_equation(avg.base, r), c1, c2]
    if r.symmetric:
        children.append(agreement("symmetric consistency", "cond1 iff cond2 for symmetric r", [c1, c2]))
    return all_of("admissible CYBE", "S-admissible classical Yang-Baxter equation", children)


def _images(stack, v) -> np.ndarray:
    return el.einsum("i,iab->ab", v, stack)


def combined_conditions(avg: AveragingAlgebra, s, r) -> CheckReport:
    """The six tensor identities in ``r`` that replace the coproduct-side bialgebra axioms."""
    p, s = avg.op, el.array(s)
    m = _coeff(avg.base, r)
    n = avg.dim
    L, ad = avg.base.left(), _ad(avg.base)
    ident = el.identity(n)
    sides = {k: (el.zeros(n, n, n), el.zeros(n, n, n)) for k in ("1a", "1b", "2a", "2b", "3a", "3b")}

    def put(key, x, lhs, rhs):
        sides[key][0][x] = lhs
        sides[key][1][x] = rhs

    def kron(a, b):
        return a @ m @ b.T

    zero = el.zeros(n, n)
    for x in range(n):
        lsx, adsx = _images(L, s[:, x]), _images(ad, s[:, x])
        lpx, adpx = _images(L, p[:, x]), _images(ad, p[:, x])
        put("1a", x, kron(s @ L[x], s) + kron(s, s @ ad[x]), kron(lsx @ p, ident) + kron(s, adsx))
        put("1b", x, lsx @ (p @ m - m @ s.T), (m @ p.T - s @ m) @ adsx.T)
        put("2a", x, kron(p @ L[x], s) + kron(p, s @ ad[x]), kron(lpx @ p, ident) + kron(p, adpx))
        u = m @ s.T - p @ m
        put("2b", x, lpx @ u + u @ adpx.T, zero)
        put("3a", x, kron(s @ L[x], p) + kron(s, p @ ad[x]), kron(lpx @ s, ident) + kron(s, adpx))
        w = s @ m - m @ p.T
        put("3b", x, lpx @ w + w @ adpx.T, zero)

    def line(key, label):
        lhs, rhs = sides[key]
        return compare(f"combined {key}", label, el.canon(lhs), el.canon(rhs), 1)

    return all_of("combined conditions", "coproduct axioms in terms of r", [
        all_of("combined 1", "coaveraging in terms of r", [
            line("1a", "(SL_x (x) S + S (x) S ad_x)r = (L_Sx P (x) id + S (x) ad_Sx)r"),
            line("1b", "(L_Sx (x) id)(P (x) id - id (x) S)r = (id (x) ad_Sx)(id (x) P - S (x) id)r"),
        ]),
        all_of("combined 2", "P-S chain in terms of r", [
            line("2a", "(PL_x (x) S + P (x) S ad_x)r = (L_Px P (x) id + P (x) ad_Px)r"),
            line("2b", "(L_Px (x) id + id (x) ad_Px)(id (x) S - P (x) id)r = 0"),
        ]),
        all_of("combined 3", "S-P chain in terms of r", [
            line("3a", "(SL_x (x) P + S (x) P ad_x)r = (L_Px S (x) id + S (x) ad_Px)r"),
            line("3b", "(L_Px (x) id + id (x) ad_Px)(S (x) id - id (x) P)r = 0"),
        ]),
    ])


def check_combined_conditions(avg: AveragingAlgebra, s, r) -> CheckReport:
    """Evaluate the combined identities and the matching coproduct axioms of ``Delta_r``.

    Besides the identities themselves, the report holds an ``equivalence`` child
    that passes iff each identity and its coproduct counterpart agree.
    """
    s = el.array(s)
    pre = check_S_admissible(avg, s)
    if not pre.passed:
        raise KindError(f"operator pair is not S-admissible: {pre.summary()}")
    comb = combined_conditions(avg, s, r)
    d = delta_r(avg.base, r).coproduct
    coavg = avg_coalgebra_report(d, s)
    dual = check_dual_admissible(d, avg.op, s)
    pairs = [
        agreement("coaveraging (first)", "1a iff first coaveraging equality",
                  [comb.child("combined 1").child("combined 1a"), coavg.child("coaveraging (first)")]),
        agreement("coaveraging (second)", "1b iff second coaveraging equality",
                  [comb.child("combined 1").child("combined 1b"), coavg.child("coaveraging (second)")]),
        agreement("P-S chain", "combined 2 iff P-S chain", [comb.child("combined 2"), dual.child("P-S chain")]),
        agreement("S-P chain", "combined 3 iff S-P chain", [comb.child("combined 3"), dual.child("S-P chain")]),
    ]
    equiv = all_of("equivalence", "combined identities match the coproduct axioms", pairs)
    return CheckReport(comb.name, comb.tag, comb.status, comb.witness, comb.children + (equiv,), comb.note)


def build_coboundary_avg_bialgebra(avg: AveragingAlgebra, s, r) -> AvgBialgebra:
    """``(A, o, Delta_r, P, S)`` for a symmetric solution ``r`` of the admissible CYBE."""
    s = el.array(s)
    r = as_r(r)
    verify(avg.base, PRE_LIE)
    if r.coeff.shape != (avg.dim, avg.dim):
        raise DimensionMismatch(f"r of shape {r.coeff.shape} on a {avg.dim}-dim algebra")
    checks = [
        predicate("symmetric r", "r = t(r)", r.symmetric, "r is not symmetric"),
        check_S_admissible(avg, s),
    ]
    if checks[1].passed:
        checks.append(admissible_cybe_report(avg, s, r))
    for rep in checks:
        if not rep.passed:
            raise PreconditionFailed(f"precondition failed: {rep.summary()}", rep)
    bi = AvgBialgebra(avg.base, avg.op, delta_r(avg.base, r), s)
    post = check_avg_prelie_bialgebra(bi)
    if not post.passed:
        raise TheoremViolation(f"coboundary construction is not a bialgebra: {post.summary()}", post)
    return bi
