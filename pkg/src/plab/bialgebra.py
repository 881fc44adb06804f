"""Coalgebras, (averaging) pre-Lie bialgebras, quadratic forms and Manin triples.

A coalgebra on an ``n``-dimensional space is a tensor ``d`` with
``Delta(e_i) = sum_jk d[i, j, k] e_j (x) e_k``.  Elements of A (x) A are
``n x n`` matrices, so ``(M (x) N) t = M t N^T`` and the flip is ``t.T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from .algebra import (Algebra, AveragingAlgebra, LIE, PRE_LIE, averaging_algebra, check_averaging,
                      check_lie, check_pre_lie, commutator, verify)
from .errors import DimensionMismatch, KindError, NotBalanced, PartitionError, SingularForm
from .matched_pairs import MatchedPair, build_double
from .reports import CheckReport, all_of, compare, predicate, vanishes
from .representations import check_S_admissible

PRE_LIE_CO, LIE_CO, UNCHECKED = "preLieCo", "LieCo", "unchecked"


@dataclass(frozen=True, eq=False)
class Coalgebra:
    coproduct: np.ndarray
    label: str = ""
    kind: str = field(default=UNCHECKED, init=False)

    def __post_init__(self):
        d = el.array(self.coproduct)
        if d.ndim != 3 or len(set(d.shape)) > 1:
            raise DimensionMismatch(f"coproduct must be n x n x n, got {d.shape}")
        object.__setattr__(self, "coproduct", d)

    @property
    def dim(self) -> int:
        return self.coproduct.shape[0]


def zero_coalgebra(n: int) -> Coalgebra:
    return Coalgebra(el.zeros(n, n, n))


def _tagged(co: Coalgebra, kind: str) -> Coalgebra:
    out = Coalgebra(co.coproduct, co.label)
    object.__setattr__(out, "kind", kind)
    return out


def _swap(t) -> np.ndarray:
    """Flip the last two tensor legs."""
    return np.swapaxes(t, -1, -2)


def _on_images(d, m, n) -> np.ndarray:
    """``(M (x) N) Delta(e_i)`` for every basis index ``i``."""
    return el.einsum("aj,ijk,bk->iab", m, d, n)


def _delta_of(d, p) -> np.ndarray:
    """``Delta(p e_i)`` for every ``i``."""
    return el.einsum("li,ljk->ijk", p, d)


def check_prelie_coalgebra(co: Coalgebra) -> CheckReport:
    d = co.coproduct
    left = el.einsum("ijk,jab->iabk", d, d)    # (Delta (x) id) Delta
    right = el.einsum("ijk,kab->ijab", d, d)   # (id (x) Delta) Delta
    diff = left - right
    return compare("pre-Lie coalgebra", "pre-Lie coassociator", diff, diff.transpose(0, 2, 1, 3), 1)


def check_avg_coalgebra(co: Coalgebra, s) -> CheckReport:
    if not check_prelie_coalgebra(co).passed:
        raise KindError("averaging coalgebra check needs a pre-Lie coalgebra")
    return avg_coalgebra_report(co.coproduct, el.array(s))


def avg_coalgebra_report(d, s) -> CheckReport:
    n = d.shape[0]
    ident = el.identity(n)
    ss = _on_images(d, s, s)
    ds = _delta_of(d, s)
    s_id = _on_images(ds, s, ident)
    id_s = _on_images(ds, ident, s)
    return all_of("averaging coalgebra", "averaging coalgebra", [
        compare("coaveraging (first)", "(S(x)S)D(x) = (S(x)id)D(Sx)", ss, s_id, 1),
        compare("coaveraging (second)", "(S(x)id)D(Sx) = (id(x)S)D(Sx)", s_id, id_s, 1),
    ])


def dualize_coalgebra(co: Coalgebra, s) -> AveragingAlgebra:
    """The averaging pre-Lie algebra on the dual space, with operator ``s^T``."""
    s = el.array(s)
    if not check_avg_coalgebra(co, s).passed:
        raise KindError("dualization needs an averaging pre-Lie coalgebra")
    return averaging_algebra(Algebra(co.coproduct.transpose(1, 2, 0)), s.T.copy())


def dualize_product(alg: Algebra) -> Coalgebra:
    """The coalgebra on the dual space whose dual product is ``alg``."""
    return Coalgebra(alg.product.transpose(2, 0, 1))


def check_prelie_bialgebra(alg: Algebra, co: Coalgebra) -> CheckReport:
    verify(alg, PRE_LIE)
    if not check_prelie_coalgebra(co).passed:
        raise KindError("pre-Lie bialgebra check needs a pre-Lie coalgebra")
    return prelie_bialgebra_report(alg, co)


def prelie_bialgebra_report(alg: Algebra, co: Coalgebra) -> CheckReport:
    c, d = alg.product, co.coproduct
    if c.shape != d.shape:
        raise DimensionMismatch("algebra and coalgebra dimensions differ")
    L, R = alg.left(), alg.right()
    lhs1 = el.einsum("ijk,kab->ijab", commutator(c), d)
    w = el.einsum("iac,jcb->ijab", L, d) + el.einsum("jac,ibc->ijab", d, L - R)
    rhs1 = w - w.transpose(1, 0, 2, 3)
    dd = el.einsum("ijk,kab->ijab", c, d)
    lhs2 = dd - _swap(dd)
    x = el.einsum("iac,jbc->ijab", d, R) + el.einsum("iac,jcb->ijab", L, d) + el.einsum("jac,ibc->ijab", d, L)
    rhs2 = x - _swap(x)
    return all_of("pre-Lie bialgebra", "pre-Lie bialgebra", [
        compare("commutator compatibility", "D([x,y]) cocycle", lhs1, rhs1, 2),
        compare("product compatibility", "D(xy) - tD(xy)", lhs2, rhs2, 2),
    ])


@dataclass(frozen=True, eq=False)
class AvgBialgebra:
    """Components ``(A, o, Delta, P, S)``; validity is established by the checker."""

    alg: Algebra
    p: np.ndarray
    co: Coalgebra
    s: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", el.array(self.p))
        object.__setattr__(self, "s", el.array(self.s))
        n = self.alg.dim
        if self.co.dim != n or self.p.shape != (n, n) or self.s.shape != (n, n):
            raise DimensionMismatch("bialgebra components have inconsistent dimensions")

    @property
    def dim(self) -> int:
        return self.alg.dim


def check_dual_admissible(d, p, s) -> CheckReport:
    """The two coproduct chains coupling P and S."""
    n = d.shape[0]
    ident = el.identity(n)
    dp = _delta_of(d, p)
    a1 = _on_images(d, p, s)
    b1 = _on_images(dp, ident, s)
    c1 = _on_images(dp, p, ident)
    a2 = _on_images(d, s, p)
    b2 = _on_images(dp, s, ident)
    c2 = _on_images(dp, ident, p)
    return all_of("dual admissibility", "dual admissibility", [
        all_of("P-S chain", "(P(x)S)D(x) = (id(x)S)D(Px) = (P(x)id)D(Px)", [
            compare("P-S chain (first)", "(P(x)S)D(x) = (id(x)S)D(Px)", a1, b1, 1),
            compare("P-S chain (second)", "(id(x)S)D(Px) = (P(x)id)D(Px)", b1, c1, 1),
        ]),
        all_of("S-P chain", "(S(x)P)D(x) = (S(x)id)D(Px) = (id(x)P)D(Px)", [
            compare("S-P chain (first)", "(S(x)P)D(x) = (S(x)id)D(Px)", a2, b2, 1),
            compare("S-P chain (second)", "(S(x)id)D(Px) = (id(x)P)D(Px)", b2, c2, 1),
        ]),
    ])


def check_avg_prelie_bialgebra(bi: AvgBialgebra) -> CheckReport:
    alg, co, p, s = bi.alg, bi.co, bi.p, bi.s
    pre_lie = check_pre_lie(alg)
    item1 = all_of("averaging algebra", "averaging pre-Lie algebra", [pre_lie, check_averaging(alg, p)])
    co_ok = check_prelie_coalgebra(co)
    item2 = all_of("averaging coalgebra", "averaging pre-Lie coalgebra",
                   [co_ok, avg_coalgebra_report(co.coproduct, s)])
    item3 = prelie_bialgebra_report(alg, co)
    item4 = check_S_admissible(AveragingAlgebra(alg, p), s)
    item5 = check_dual_admissible(co.coproduct, p, s)
    return all_of("averaging pre-Lie bialgebra", "averaging pre-Lie bialgebra",
                  [item1, item2, item3, item4, item5])


@dataclass(frozen=True, eq=False)
class BilinearForm:
    matrix: np.ndarray

    def __post_init__(self):
        m = el.array(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"form matrix must be square, got {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def skew(self) -> bool:
        return el.equal(self.matrix, -self.matrix.T)

    @property
    def nondegenerate(self) -> bool:
        return el.invert(self.matrix) is not None


def as_form(omega) -> BilinearForm:
    return omega if isinstance(omega, BilinearForm) else BilinearForm(omega)


def check_quadratic(alg: Algebra, omega, p=None) -> CheckReport:
    verify(alg, PRE_LIE)
    return quadratic_report(alg, omega, p)


def quadratic_report(alg: Algebra, omega, p=None) -> CheckReport:
    om = as_form(omega).matrix
    n = alg.dim
    if om.shape != (n, n):
        raise DimensionMismatch(f"form of size {om.shape} on a {n}-dim algebra")
    c = alg.product
    children = [
        compare("skew", "w(x,y) = -w(y,x)", om, -om.T, 2),
        predicate("nondegenerate", "w nondegenerate", el.invert(om) is not None, "form is singular"),
    ]
    inv = el.einsum("ijm,mk->ijk", c, om) + el.einsum("jm,ikm->ijk", om, commutator(c))
    children.append(vanishes("invariant", "w(xy,z) + w(y, xz - zx) = 0", inv, 3))
    if p is not None:
        p = el.array(p)
        children.append(compare("operator symmetric", "w(Px,y) = w(x,Py)", p.T @ om, om @ p, 2))
    return all_of("quadratic", "quadratic form", children)


def omega_sharp(omega) -> np.ndarray:
    """Matrix of ``x -> w(x, .)`` in the dual basis."""
    om = as_form(omega).matrix
    if el.invert(om) is None:
        raise SingularForm("form is degenerate")
    return om.T.copy()


def check_rep_homomorphism(rho1, phi1, alpha1, rho2, phi2, alpha2, f) -> CheckReport:
    fr = el.einsum("ab,ibc->iac", f, rho1)
    rf = el.einsum("iab,bc->iac", rho2, f)
    fphi = el.einsum("ab,ibc->iac", f, phi1)
    phif = el.einsum("iab,bc->iac", phi2, f)
    return all_of("module homomorphism", "module homomorphism", [
        compare("rho intertwined", "rho2(x) f = f rho1(x)", rf, fr, 1),
        compare("phi intertwined", "phi2(x) f = f phi1(x)", phif, fphi, 1),
        compare("operator intertwined", "f a1 = a2 f", (f @ alpha1).T, (alpha2 @ f).T, 1),
    ])


def verify_rep_isomorphism(avg: AveragingAlgebra, omega) -> CheckReport:
    """Check that ``w#`` maps the regular representation onto the coregular one."""
    alg, p = avg.base, avg.op
    f = omega_sharp(omega)
    L, R = alg.left(), alg.right()
    lt, rt = L.transpose(0, 2, 1), R.transpose(0, 2, 1)
    hom = check_rep_homomorphism(L, R, p, -lt + rt, rt, p.T.copy(), f)
    return all_of("regular-to-coregular isomorphism", "w# isomorphism", [
        predicate("invertible", "w# invertible", el.invert(f) is not None, "w# is singular"), hom])


def _check_partition(n, part_a, part_b) -> tuple[list[int], list[int]]:
    a, b = sorted(part_a), sorted(part_b)
    if set(a) & set(b) or set(a) | set(b) != set(range(n)) or len(a) + len(b) != n:
        raise PartitionError(f"{a} and {b} do not partition range({n})")
    return a, b


def _closed(c, part) -> bool:
    others = [k for k in range(c.shape[0]) if k not in part]
    return el.is_zero(c[np.ix_(part, part, others)])


def check_manin_triple(total: AveragingAlgebra, omega, part_a, part_b) -> CheckReport:
    n = total.dim
    a, b = _check_partition(n, part_a, part_b)
    c, op = total.product, total.op
    om = as_form(omega).matrix
    children = [predicate("even dimension", "even total dimension", n % 2 == 0, f"total dimension {n}"),
                quadratic_report(total.base, om, op)]
    for name, part in (("A", a), ("B", b)):
        others = [k for k in range(n) if k not in part]
        children.append(vanishes(f"{name} subalgebra", "closed under product",
                                 c[np.ix_(part, part, others)], 2))
        children.append(vanishes(f"{name} operator-stable", "closed under operator",
                                 op[np.ix_(others, part)].T, 1))
        children.append(vanishes(f"{name} isotropic", "isotropic", om[np.ix_(part, part)], 2))
    return all_of("Manin triple", "Manin triple", children)


def manin_form(n: int) -> np.ndarray:
    """``w(x + xi, y + eta) = <xi, y> - <eta, x>`` on A (+) A*."""
    om = el.zeros(2 * n, 2 * n)
    for i in range(n):
        om[n + i, i] = 1
        om[i, n + i] = -1
    return om


def bialgebra_matched_pair(bi: AvgBialgebra) -> MatchedPair:
    """Matched pair of A and A* acting by the coregular actions of each other."""
    alg = bi.alg
    dual = Algebra(bi.co.coproduct.transpose(1, 2, 0))
    L, R = alg.left(), alg.right()
    Ld, Rd = dual.left(), dual.right()
    return MatchedPair(alg, dual,
                       -L.transpose(0, 2, 1) + R.transpose(0, 2, 1), R.transpose(0, 2, 1),
                       -Ld.transpose(0, 2, 1) + Rd.transpose(0, 2, 1), Rd.transpose(0, 2, 1),
                       bi.p, bi.s.T.copy())


def bialgebra_to_manin(bi: AvgBialgebra) -> tuple[AveragingAlgebra, BilinearForm, tuple[list[int], list[int]]]:
    if not el.equal(bi.s, bi.p):
        raise KindError("the Manin double needs the coalgebra operator to equal P")
    r = check_avg_prelie_bialgebra(bi)
    if not r.passed:
        raise KindError(f"not an averaging pre-Lie bialgebra: {r.summary()}")
    n = bi.dim
    total = build_double(bialgebra_matched_pair(bi))
    return total, BilinearForm(manin_form(n)), (list(range(n)), list(range(n, 2 * n)))


def manin_to_bialgebra(total: AveragingAlgebra, omega, partition, sign: int = -1) -> AvgBialgebra:
    """Recover ``(A, o, Delta, P, S)`` from a Manin triple.

    The product on ``A`` is ``sign`` times the restricted product; ``sign=-1`` is
    the classical extraction convention, ``sign=1`` keeps the product as is.
    """
    part_a, part_b = partition
    r = check_manin_triple(total, omega, part_a, part_b)
    if not r.passed:
        raise KindError(f"not a Manin triple: {r.summary()}")
    a, b = sorted(part_a), sorted(part_b)
    om = as_form(omega).matrix
    c, op = total.product, total.op
    # coordinates of the functional w(f_beta, .) restricted to A
    k = om[np.ix_(b, a)].T.copy()
    kinv = el.invert(k)
    cb = c[np.ix_(b, b, b)]
    cdual = el.einsum("kc,abc,ai,bj->ijk", k, cb, kinv, kinv)
    s_dual = k @ op[np.ix_(b, b)] @ kinv
    return AvgBialgebra(Algebra(sign * c[np.ix_(a, a, a)]), op[np.ix_(a, a)],
                        Coalgebra(cdual.transpose(2, 0, 1)), el.canon(s_dual.T))


def check_balanced(alg: Algebra, co: Coalgebra) -> CheckReport:
    verify(alg, PRE_LIE)
    if not check_prelie_bialgebra(alg, co).passed:
        raise KindError("balance is defined for pre-Lie bialgebras")
    return balanced_report(alg, co)


def balanced_report(alg: Algebra, co: Coalgebra) -> CheckReport:
    # w[x, y] = (R_y (x) id) Delta(x)
    w = el.einsum("jac,icb->ijab", alg.right(), co.coproduct)
    lhs = w + _swap(w.transpose(1, 0, 2, 3))
    rhs = w.transpose(1, 0, 2, 3) + _swap(w)
    return compare("balanced", "balanced pre-Lie bialgebra", lhs, rhs, 2)


@dataclass(frozen=True, eq=False)
class AvgLieBialgebra:
    lie: Algebra
    delta: Coalgebra
    p: np.ndarray
    s: np.ndarray


def induced_lie_bialgebra(bi: AvgBialgebra) -> AvgLieBialgebra:
    r = check_avg_prelie_bialgebra(bi)
    if not r.passed:
        raise KindError(f"not an averaging pre-Lie bialgebra: {r.summary()}")
    bal = balanced_report(bi.alg, bi.co)
    if not bal.passed:
        raise NotBalanced(f"bialgebra is not balanced: {bal.summary()}", bal)
    d = bi.co.coproduct
    lie = verify(Algebra(commutator(bi.alg.product)), LIE)
    return AvgLieBialgebra(lie, _tagged(Coalgebra(d - _swap(d)), LIE_CO), bi.p, bi.s)


def check_avg_lie_bialgebra(lie: Algebra, delta: Coalgebra, p, s) -> CheckReport:
    p, s = el.array(p), el.array(s)
    c, d = lie.product, delta.coproduct
    n = lie.dim
    item1 = all_of("averaging Lie algebra", "averaging Lie algebra", [check_lie(lie), check_averaging(lie, p)])
    t = el.einsum("ijk,kab->ijab", d, d)   # (id (x) delta) delta, legs [x, 1, 2, 3]
    # sigma(u (x) v (x) w) = w (x) u (x) v
    cyc = t + t.transpose(0, 2, 3, 1) + t.transpose(0, 3, 1, 2)
    item2 = all_of("averaging Lie coalgebra", "averaging Lie coalgebra", [
        compare("antisymmetric", "delta = -t delta", d, -_swap(d), 1),
        vanishes("co-Jacobi", "co-Jacobi identity", cyc, 1),
        avg_coalgebra_report(d, s),
    ])
    ad = lie.left()
    lhs = el.einsum("ijk,kab->ijab", c, d)
    w = el.einsum("iac,jcb->ijab", ad, d) + el.einsum("jac,ibc->ijab", d, ad)
    item3 = compare("cocycle", "delta([x,y]) cocycle", lhs, w - w.transpose(1, 0, 2, 3), 2)
    px_sy, s_px_y, s_x_sy = _mixed_sides(c, p, s)
    item4 = all_of("bracket admissibility", "[Px,Sy] = S([Px,y]) = S([x,Sy])", [
        compare("bracket admissibility (first)", "[Px,Sy] = S([Px,y])", px_sy, s_px_y, 2),
        compare("bracket admissibility (second)", "S([Px,y]) = S([x,Sy])", s_px_y, s_x_sy, 2),
    ])
    ident = el.identity(n)
    dp = _delta_of(d, p)
    a = _on_images(d, s, p)
    b = _on_images(dp, s, ident)
    cc = _on_images(dp, ident, p)
    item5 = all_of("cobracket admissibility", "(S(x)P)delta(x) = (S(x)id)delta(Px) = (id(x)P)delta(Px)", [
        compare("cobracket admissibility (first)", "(S(x)P)delta(x) = (S(x)id)delta(Px)", a, b, 1),
        compare("cobracket admissibility (second)", "(S(x)id)delta(Px) = (id(x)P)delta(Px)", b, cc, 1),
    ])
    return all_of("averaging Lie bialgebra", "averaging Lie bialgebra", [item1, item2, item3, item4, item5])


def _mixed_sides(c, p, s):
    def ap(m, t):
        return el.einsum("...k,lk->...l", t, m)
    px_sy = el.einsum("ai,bj,abk->ijk", p, s, c)
    s_px_y = ap(s, el.einsum("ai,ajk->ijk", p, c))
    s_x_sy = ap(s, el.einsum("bj,ibk->ijk", s, c))
    return px_sy, s_px_y, s_x_sy
