"""Matched pairs of averaging pre-Lie algebras and of Leibniz algebras, and their doubles."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactlin as el
from .algebra import Algebra, AveragingAlgebra, LEIBNIZ, averaging_algebra, induced_leibniz, verify
from .errors import DimensionMismatch, KindError
from .reports import CheckReport, all_of, vanishes
from .representations import (Representation, check_leibniz_representation,
                              check_prelie_representation, direct_sum_map)


@dataclass(frozen=True, eq=False)
class MatchedPair:
    """Two algebras acting on each other.

    ``rho_a``/``phi_a`` have shape ``(dim a, dim b, dim b)`` (A acting on B) and
    ``rho_b``/``phi_b`` shape ``(dim b, dim a, dim a)``.  ``p_a``/``p_b`` are the
    averaging operators, or ``None`` for a plain pre-Lie matched pair.
    """

    a: Algebra
    b: Algebra
    rho_a: np.ndarray
    phi_a: np.ndarray
    rho_b: np.ndarray
    phi_b: np.ndarray
    p_a: np.ndarray | None = None
    p_b: np.ndarray | None = None

    def __post_init__(self):
        n, m = self.a.dim, self.b.dim
        for name, shape in (("rho_a", (n, m, m)), ("phi_a", (n, m, m)),
                            ("rho_b", (m, n, n)), ("phi_b", (m, n, n))):
            arr = el.array(getattr(self, name))
            if arr.shape != shape:
                raise DimensionMismatch(f"{name} has shape {arr.shape}, expected {shape}")
            object.__setattr__(self, name, arr)
        for name, d in (("p_a", n), ("p_b", m)):
            v = getattr(self, name)
            if v is not None:
                v = el.array(v)
                if v.shape != (d, d):
                    raise DimensionMismatch(f"{name} has shape {v.shape}, expected {(d, d)}")
                object.__setattr__(self, name, v)

    @property
    def averaging(self) -> bool:
        return self.p_a is not None and self.p_b is not None


def _act(maps, x, v) -> np.ndarray:
    """``(sum_i x_i maps[i]) v``."""
    return el.einsum("i,iab,b->a", x, maps, v)


def _unit(n, i):
    v = el.zeros(n)
    v[i] = 1
    return v


def _cross_reps(mp: MatchedPair) -> tuple[Representation, Representation]:
    return (Representation(mp.a, mp.rho_a, mp.phi_a), Representation(mp.b, mp.rho_b, mp.phi_b))


def check_matched_pair_prelie(mp: MatchedPair) -> CheckReport:
    rep_a, rep_b = _cross_reps(mp)
    for name, alg, rep in (("A on B", mp.a, rep_a), ("B on A", mp.b, rep_b)):
        r = check_prelie_representation(alg, rep)
        if not r.passed:
            raise KindError(f"cross action {name} is not a representation: {r.summary()}")
    n, m = mp.a.dim, mp.b.dim
    ca, cb = mp.a.product, mp.b.product

    def mul_a(x, y):
        return el.contract(ca, x, y)

    def mul_b(x, y):
        return el.contract(cb, x, y)

    ra, fa, rb, fb = mp.rho_a, mp.phi_a, mp.rho_b, mp.phi_b
    e_a = [_unit(n, i) for i in range(n)]
    e_b = [_unit(m, i) for i in range(m)]
    # identities with one A-index and two B-indices, valued in B
    id1 = np.empty((n, m, m, m), dtype=object)
    id2 = np.empty((n, m, m, m), dtype=object)
    for i, x in enumerate(e_a):
        for j, a in enumerate(e_b):
            for k, b in enumerate(e_b):
                lhs = _act(ra, x, mul_b(a, b))
                rhs = (-_act(ra, _act(rb, a, x) - _act(fb, a, x), b)
                       + mul_b(_act(ra, x, a) - _act(fa, x, a), b)
                       + _act(fa, _act(fb, b, x), a)
                       + mul_b(a, _act(ra, x, b)))
                id1[i, j, k] = lhs - rhs
                lhs = _act(fa, x, mul_b(a, b) - mul_b(b, a))
                rhs = (_act(fa, _act(rb, b, x), a) - _act(fa, _act(rb, a, x), b)
                       + mul_b(a, _act(fa, x, b)) - mul_b(b, _act(fa, x, a)))
                id2[i, j, k] = lhs - rhs
    # mirrored identities, valued in A
    id3 = np.empty((m, n, n, n), dtype=object)
    id4 = np.empty((m, n, n, n), dtype=object)
    for i, a in enumerate(e_b):
        for j, x in enumerate(e_a):
            for k, y in enumerate(e_a):
                lhs = _act(rb, a, mul_a(x, y))
                rhs = (-_act(rb, _act(ra, x, a) - _act(fa, x, a), y)
                       + mul_a(_act(rb, a, x) - _act(fb, a, x), y)
                       + _act(fb, _act(fa, y, a), x)
                       + mul_a(x, _act(rb, a, y)))
                id3[i, j, k] = lhs - rhs
                lhs = _act(fb, a, mul_a(x, y) - mul_a(y, x))
                rhs = (_act(fb, _act(ra, y, a), x) - _act(fb, _act(ra, x, a), y)
                       + mul_a(x, _act(fb, a, y)) - mul_a(y, _act(fb, a, x)))
                id4[i, j, k] = lhs - rhs
    return all_of("matched pair", "pre-Lie matched pair", [
        vanishes("A acts on B-products", "rhoA(x)(a b)", _fill(id1, m), 3),
        vanishes("A acts on B-commutators", "phiA(x)(a b - b a)", _fill(id2, m), 3),
        vanishes("B acts on A-products", "rhoB(a)(x y)", _fill(id3, n), 3),
        vanishes("B acts on A-commutators", "phiB(a)(x y - y x)", _fill(id4, n), 3),
    ])


def _fill(arr, inner) -> np.ndarray:
    """Stack an object array of vectors into a dense array."""
    out = el.zeros(*arr.shape, inner)
    for idx in np.ndindex(arr.shape):
        out[idx] = arr[idx]
    return out


def double_tensor(mp: MatchedPair) -> np.ndarray:
    """Structure constants on A (+) B."""
    n, m = mp.a.dim, mp.b.dim
    out = el.zeros(n + m, n + m, n + m)
    out[:n, :n, :n] = mp.a.product
    out[n:, n:, n:] = mp.b.product
    # x b = rhoA(x) b + phiB(b) x ;  a y = rhoB(a) y + phiA(y) a
    out[:n, n:, n:] = mp.rho_a.transpose(0, 2, 1)
    out[:n, n:, :n] = mp.phi_b.transpose(2, 0, 1)
    out[n:, :n, :n] = mp.rho_b.transpose(0, 2, 1)
    out[n:, :n, n:] = mp.phi_a.transpose(2, 0, 1)
    return out


def double_data(mp: MatchedPair) -> tuple[Algebra, np.ndarray | None]:
    """Unverified double and block operator."""
    op = direct_sum_map(mp.p_a, mp.p_b) if mp.averaging else None
    return Algebra(double_tensor(mp)), op


def build_double(mp: MatchedPair) -> AveragingAlgebra:
    if not mp.averaging:
        raise KindError("build_double needs averaging operators on both sides")
    r = check_matched_pair_prelie(mp)
    if not r.passed:
        raise KindError(f"not a matched pair: {r.summary()}")
    alg, op = double_data(mp)
    return averaging_algebra(alg, op)


@dataclass(frozen=True, eq=False)
class LeibnizMatchedPair:
    """``rho_l``/``rho_r``: G1 acting on G2, shape ``(dim g1, dim g2, dim g2)``;
    ``mu_l``/``mu_r``: G2 acting on G1."""

    g1: Algebra
    g2: Algebra
    rho_l: np.ndarray
    rho_r: np.ndarray
    mu_l: np.ndarray
    mu_r: np.ndarray

    def __post_init__(self):
        n, m = self.g1.dim, self.g2.dim
        for name, shape in (("rho_l", (n, m, m)), ("rho_r", (n, m, m)),
                            ("mu_l", (m, n, n)), ("mu_r", (m, n, n))):
            arr = el.array(getattr(self, name))
            if arr.shape != shape:
                raise DimensionMismatch(f"{name} has shape {arr.shape}, expected {shape}")
            object.__setattr__(self, name, arr)


def check_matched_pair_leibniz(mp: LeibnizMatchedPair) -> CheckReport:
    for name, alg, left, right in (("G1 on G2", mp.g1, mp.rho_l, mp.rho_r),
                                   ("G2 on G1", mp.g2, mp.mu_l, mp.mu_r)):
        r = check_leibniz_representation(alg, left, right)
        if not r.passed:
            raise KindError(f"cross action {name} is not a Leibniz representation: {r.summary()}")
    n, m = mp.g1.dim, mp.g2.dim
    c1, c2 = mp.g1.product, mp.g2.product

    def br1(x, y):
        return el.contract(c1, x, y)

    def br2(x, y):
        return el.contract(c2, x, y)

    rl, rr, ml, mr = mp.rho_l, mp.rho_r, mp.mu_l, mp.mu_r
    e1 = [_unit(n, i) for i in range(n)]
    e2 = [_unit(m, i) for i in range(m)]
    g2_ids = [np.empty((n, m, m), dtype=object) for _ in range(3)]
    for i, x in enumerate(e1):
        for j, xi in enumerate(e2):
            for k, eta in enumerate(e2):
                g2_ids[0][i, j, k] = (_act(rr, x, br2(xi, eta)) - br2(xi, _act(rr, x, eta))
                                      + br2(eta, _act(rr, x, xi)) - _act(rr, _act(ml, eta, x), xi)
                                      + _act(rr, _act(ml, xi, x), eta))
                g2_ids[1][i, j, k] = (_act(rl, x, br2(xi, eta)) - br2(_act(rl, x, xi), eta)
                                      - br2(xi, _act(rl, x, eta)) - _act(rl, _act(mr, xi, x), eta)
                                      - _act(rr, _act(mr, eta, x), xi))
                g2_ids[2][i, j, k] = (br2(_act(rl, x, xi), eta) + _act(rl, _act(mr, xi, x), eta)
                                      + br2(_act(rr, x, xi), eta) + _act(rl, _act(ml, xi, x), eta))
    g1_ids = [np.empty((m, n, n), dtype=object) for _ in range(3)]
    for i, xi in enumerate(e2):
        for j, x in enumerate(e1):
            for k, y in enumerate(e1):
                g1_ids[0][i, j, k] = (_act(mr, xi, br1(x, y)) - br1(x, _act(mr, xi, y))
                                      + br1(y, _act(mr, xi, x)) - _act(mr, _act(rl, y, xi), x)
                                      + _act(mr, _act(rl, x, xi), y))
                g1_ids[1][i, j, k] = (_act(ml, xi, br1(x, y)) - br1(_act(ml, xi, x), y)
                                      - br1(x, _act(ml, xi, y)) - _act(ml, _act(rr, x, xi), y)
                                      - _act(mr, _act(rr, y, xi), x))
                g1_ids[2][i, j, k] = (br1(_act(ml, xi, x), y) + _act(ml, _act(rr, x, xi), y)
                                      + br1(_act(mr, xi, x), y) + _act(ml, _act(rl, x, xi), y))
    names = ["right action on G2-brackets", "left action on G2-brackets", "left-right absorption in G2",
             "right action on G1-brackets", "left action on G1-brackets", "left-right absorption in G1"]
    arrays = [_fill(a, m) for a in g2_ids] + [_fill(a, n) for a in g1_ids]
    return all_of("Leibniz matched pair", "Leibniz matched pair",
                  [vanishes(nm, nm, a, 3) for nm, a in zip(names, arrays)])


def leibniz_double_tensor(mp: LeibnizMatchedPair) -> np.ndarray:
    n, m = mp.g1.dim, mp.g2.dim
    out = el.zeros(n + m, n + m, n + m)
    out[:n, :n, :n] = mp.g1.product
    out[n:, n:, n:] = mp.g2.product
    # [x, eta] = rhoL(x) eta + muR(eta) x ;  [xi, y] = rhoR(y) xi + muL(xi) y
    out[:n, n:, n:] = mp.rho_l.transpose(0, 2, 1)
    out[:n, n:, :n] = mp.mu_r.transpose(2, 0, 1)
    out[n:, :n, n:] = mp.rho_r.transpose(2, 0, 1)
    out[n:, :n, :n] = mp.mu_l.transpose(0, 2, 1)
    return out


def build_leibniz_double(mp: LeibnizMatchedPair) -> Algebra:
    r = check_matched_pair_leibniz(mp)
    if not r.passed:
        raise KindError(f"not a Leibniz matched pair: {r.summary()}")
    return verify(Algebra(leibniz_double_tensor(mp)), LEIBNIZ)


def _stack(maps, p):
    return el.einsum("ki,kab->iab", p, maps)


def induced_leibniz_matched_pair(mp: MatchedPair) -> LeibnizMatchedPair:
    """The induced Leibniz matched pair.

    The right action of B on A is ``muR(xi) x = -rhoB(xi) P_A x + phiB(xi) P_A x``.
    """
    if not mp.averaging:
        raise KindError("induced matched pair needs averaging operators on both sides")
    r = check_matched_pair_prelie(mp)
    if not r.passed:
        raise KindError(f"not a matched pair: {r.summary()}")
    pa, pb = mp.p_a, mp.p_b
    avg_a = averaging_algebra(mp.a, pa)
    avg_b = averaging_algebra(mp.b, pb)
    rho_l = _stack(mp.rho_a - mp.phi_a, pa)
    rho_r = el.einsum("iab,bc->iac", -mp.rho_a + mp.phi_a, pb)
    mu_l = _stack(mp.rho_b - mp.phi_b, pb)
    mu_r = el.einsum("iab,bc->iac", -mp.rho_b + mp.phi_b, pa)
    return LeibnizMatchedPair(induced_leibniz(avg_a), induced_leibniz(avg_b), rho_l, rho_r, mu_l, mu_r)
