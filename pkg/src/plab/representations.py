"""Representations of pre-Lie and averaging pre-Lie algebras.

A representation on an ``m``-dimensional module stores ``rho`` and ``phi`` as
arrays of shape ``(n, m, m)`` with ``rho[i]`` the matrix of the action of
``e_i``.  Dual modules use the dual basis, so the dual of an operator ``M`` is
``-M.T``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exactlin as el
from .algebra import (Algebra, AveragingAlgebra, LEIBNIZ, PRE_LIE, averaging_algebra,
                      commutator, verify)
from .errors import DimensionMismatch, KindError
from .reports import CheckReport, all_of, compare


@dataclass(frozen=True, eq=False)
class Representation:
    alg: Algebra
    rho: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        rho, phi = el.array(self.rho), el.array(self.phi)
        n = self.alg.dim
        if rho.ndim != 3 or rho.shape[0] != n or rho.shape[1] != rho.shape[2] or phi.shape != rho.shape:
            raise DimensionMismatch(f"action arrays {rho.shape}, {phi.shape} for a {n}-dim algebra")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "phi", phi)

    @property
    def module_dim(self) -> int:
        return self.rho.shape[1]

    def rho_of(self, x) -> np.ndarray:
        return el.einsum("i,iab->ab", x, self.rho)

    def phi_of(self, x) -> np.ndarray:
        return el.einsum("i,iab->ab", x, self.phi)


@dataclass(frozen=True, eq=False)
class AvgRepresentation:
    rep: Representation
    avg: AveragingAlgebra
    alpha: np.ndarray

    @property
    def module_dim(self) -> int:
        return self.rep.module_dim


def zero_representation(alg: Algebra, m: int) -> Representation:
    return Representation(alg, el.zeros(alg.dim, m, m), el.zeros(alg.dim, m, m))


def _bind(alg: Algebra, rep: Representation):
    if not alg.same_as(rep.alg):
        raise KindError("representation belongs to a different algebra")


def _stack(maps, p) -> np.ndarray:
    """``out[i] = sum_k p[k, i] maps[k]``: the action of ``p(e_i)``."""
    return el.einsum("ki,kab->iab", p, maps)


def _mm(a, b) -> np.ndarray:
    """Batched matrix product over a leading index (either side may be unbatched)."""
    sa = "iab" if np.ndim(a) == 3 else "ab"
    sb = "ibc" if np.ndim(b) == 3 else "bc"
    return el.einsum(f"{sa},{sb}->iac", a, b)


def _pair_mm(a, b) -> np.ndarray:
    """``out[i, j] = a[i] @ b[j]``."""
    return el.einsum("iab,jbc->ijac", a, b)


def check_prelie_representation(alg: Algebra, rep: Representation) -> CheckReport:
    _bind(alg, rep)
    rho, phi, c = rep.rho, rep.phi, alg.product
    rr = _pair_mm(rho, rho)
    lhs1 = el.einsum("ijk,kab->ijab", commutator(c), rho)
    rhs1 = rr - rr.transpose(1, 0, 2, 3)
    lhs2 = el.einsum("ijk,kab->ijab", c, phi)
    rhs2 = _pair_mm(rho, phi) - _pair_mm(phi, rho).transpose(1, 0, 2, 3) + _pair_mm(phi, phi).transpose(1, 0, 2, 3)
    return all_of("pre-Lie representation", "representation", [
        compare("rho bracket", "rho([x,y]) = [rho(x), rho(y)]", lhs1, rhs1, 2),
        compare("phi product", "phi(xy) = rho(x)phi(y) - phi(y)rho(x) + phi(y)phi(x)", lhs2, rhs2, 2),
    ])


def verified_representation(rep: Representation) -> Representation:
    verify(rep.alg, PRE_LIE)
    r = check_prelie_representation(rep.alg, rep)
    if not r.passed:
        raise KindError(f"not a representation: {r.summary()}")
    return rep


def _chain(name, tag, maps, p, alpha) -> list[CheckReport]:
    mp = _stack(maps, p)
    a = _mm(mp, alpha)
    b = _mm(alpha, mp)
    c = _mm(_mm(alpha, maps), alpha)
    return [
        compare(f"{name} (first)", f"{tag}: act(Px) a = a act(Px)", a, b, 1),
        compare(f"{name} (second)", f"{tag}: a act(Px) = a act(x) a", b, c, 1),
    ]


def avg_sides_report(rep: Representation, p, alpha) -> CheckReport:
    """The averaging compatibility between ``p`` on the algebra and ``alpha`` on the module."""
    alpha = el.array(alpha)
    m = rep.module_dim
    if alpha.shape != (m, m):
        raise DimensionMismatch(f"module map of shape {alpha.shape} on a {m}-dim module")
    return all_of("averaging representation", "averaging representation",
                  _chain("rho", "rho", rep.rho, p, alpha) + _chain("phi", "phi", rep.phi, p, alpha))


def check_avg_representation(avgrep: AvgRepresentation) -> CheckReport:
    rep = avgrep.rep
    _bind(avgrep.avg.base, rep)
    base = check_prelie_representation(rep.alg, rep)
    if not base.passed:
        raise KindError(f"underlying representation is not verified: {base.summary()}")
    return avg_sides_report(rep, avgrep.avg.op, avgrep.alpha)


def avg_representation(avg: AveragingAlgebra, rep: Representation, alpha) -> AvgRepresentation:
    """Build and verify an averaging representation."""
    out = AvgRepresentation(rep, avg, el.array(alpha))
    r = check_avg_representation(out)
    if not r.passed:
        raise KindError(f"not an averaging representation: {r.summary()}")
    return out


def regular_representation(avg: AveragingAlgebra) -> AvgRepresentation:
    alg = avg.base
    return AvgRepresentation(Representation(alg, alg.left(), alg.right()), avg, avg.op)


def coregular_representation(avg: AveragingAlgebra, s=None) -> tuple[Representation, np.ndarray]:
    """``(A*, L* - R*, -R*)`` with companion ``S*`` (``P*`` by default)."""
    s = avg.op if s is None else el.array(s)
    alg = avg.base
    return dual_representation(Representation(alg, alg.left(), alg.right()), s)


def dual_representation(rep: Representation, beta) -> tuple[Representation, np.ndarray]:
    """``(V*, rho* - phi*, -phi*)`` with companion ``beta*``."""
    beta = el.array(beta)
    if beta.shape != (rep.module_dim, rep.module_dim):
        raise DimensionMismatch(f"module map of shape {beta.shape} on a {rep.module_dim}-dim module")
    rho_t = rep.rho.transpose(0, 2, 1)
    phi_t = rep.phi.transpose(0, 2, 1)
    return Representation(rep.alg, -rho_t + phi_t, phi_t), beta.T.copy()


def plain_dual(rep: Representation) -> Representation:
    """``(V*, rho*, phi*)``; a representation exactly when phi anticommutes."""
    return Representation(rep.alg, -rep.rho.transpose(0, 2, 1), -rep.phi.transpose(0, 2, 1))


def check_beta_admissible(avg: AveragingAlgebra, rep: Representation, beta) -> CheckReport:
    _bind(avg.base, rep)
    if not check_prelie_representation(rep.alg, rep).passed:
        raise KindError("beta-admissibility needs a verified representation")
    beta = el.array(beta)
    r = avg_sides_report(rep, avg.op, beta)
    return all_of("beta-admissible", "admissible module map", r.children)


def check_S_admissible(avg: AveragingAlgebra, s) -> CheckReport:
    c, p = avg.product, avg.op
    s = el.array(s)
    if s.shape != p.shape:
        raise DimensionMismatch(f"map of shape {s.shape} on a {avg.dim}-dim algebra")

    def ap(m, t):
        return el.einsum("...k,lk->...l", t, m)

    # index [i, j, :]
    px_sy = el.einsum("ai,bj,abk->ijk", p, s, c)
    s_px_y = ap(s, el.einsum("ai,ajk->ijk", p, c))
    s_x_sy = ap(s, el.einsum("bj,ibk->ijk", s, c))
    sx_py = el.einsum("ai,bj,abk->ijk", s, p, c)
    s_x_py = ap(s, el.einsum("bj,ibk->ijk", p, c))
    s_sx_y = ap(s, el.einsum("ai,ajk->ijk", s, c))
    return all_of("S-admissible", "S-admissibility", [
        compare("left chain (first)", "P(x)S(y) = S(P(x)y)", px_sy, s_px_y, 2),
        compare("left chain (second)", "S(P(x)y) = S(xS(y))", s_px_y, s_x_sy, 2),
        compare("right chain (first)", "S(x)P(y) = S(xP(y))", sx_py, s_x_py, 2),
        compare("right chain (second)", "S(xP(y)) = S(S(x)y)", s_x_py, s_sx_y, 2),
    ])


def check_phi_anticommute(rep: Representation) -> CheckReport:
    if not check_prelie_representation(rep.alg, rep).passed:
        raise KindError("phi anticommutation is only meaningful on a verified representation")
    pp = _pair_mm(rep.phi, rep.phi)
    return compare("phi anticommute", "phi(x)phi(y) = -phi(y)phi(x)", pp, -pp.transpose(1, 0, 2, 3), 2)


def semidirect_tensor(c, rho, phi) -> np.ndarray:
    """Structure constants on A (+) V: ``(x+u)(y+v) = xy + rho(x)v + phi(y)u``."""
    n, m = c.shape[0], rho.shape[1]
    out = el.zeros(n + m, n + m, n + m)
    out[:n, :n, :n] = c
    # e_i f_a = rho(e_i) f_a, f_a e_j = phi(e_j) f_a
    out[:n, n:, n:] = rho.transpose(0, 2, 1)
    out[n:, :n, n:] = phi.transpose(2, 0, 1)
    return out


def direct_sum_map(*maps) -> np.ndarray:
    n = sum(m.shape[0] for m in maps)
    out = el.zeros(n, n)
    k = 0
    for m in maps:
        d = m.shape[0]
        out[k:k + d, k:k + d] = m
        k += d
    return out


def semidirect_data(avg: AveragingAlgebra, rep: Representation, alpha) -> tuple[Algebra, np.ndarray]:
    """Unverified semidirect product algebra and operator ``P + alpha``."""
    _bind(avg.base, rep)
    return (Algebra(semidirect_tensor(avg.product, rep.rho, rep.phi)),
            direct_sum_map(avg.op, el.array(alpha)))


def semidirect_product(avg: AveragingAlgebra, avgrep: AvgRepresentation) -> AveragingAlgebra:
    r = check_avg_representation(avgrep)
    if not r.passed:
        raise KindError(f"semidirect product needs an averaging representation: {r.summary()}")
    alg, op = semidirect_data(avg, avgrep.rep, avgrep.alpha)
    return averaging_algebra(alg, op)


@dataclass(frozen=True, eq=False)
class LeibnizRepresentation:
    alg: Algebra
    left: np.ndarray
    right: np.ndarray


def induced_leibniz_representation(avgrep: AvgRepresentation) -> LeibnizRepresentation:
    from .algebra import induced_leibniz

    r = check_avg_representation(avgrep)
    if not r.passed:
        raise KindError(f"not an averaging representation: {r.summary()}")
    rep, p, alpha = avgrep.rep, avgrep.avg.op, avgrep.alpha
    left = _stack(rep.rho - rep.phi, p)
    right = _mm(-rep.rho + rep.phi, alpha)
    return LeibnizRepresentation(induced_leibniz(avgrep.avg), left, right)


def check_leibniz_representation(leib: Algebra, rho_l, rho_r) -> CheckReport:
    leib = verify(leib, LEIBNIZ)
    rho_l, rho_r = el.array(rho_l), el.array(rho_r)
    c = leib.product
    ll = _pair_mm(rho_l, rho_l)
    rola1 = compare("left bracket", "rhoL([x,y]) = [rhoL(x), rhoL(y)]",
                    el.einsum("ijk,kab->ijab", c, rho_l), ll - ll.transpose(1, 0, 2, 3), 2)
    rola2 = compare("right bracket", "rhoR([x,y]) = rhoL(x)rhoR(y) - rhoR(y)rhoL(x)",
                    el.einsum("ijk,kab->ijab", c, rho_r),
                    _pair_mm(rho_l, rho_r) - _pair_mm(rho_r, rho_l).transpose(1, 0, 2, 3), 2)
    # index [j, i]: rhoR(e_j) rhoL(e_i) = -rhoR(e_j) rhoR(e_i)
    rola3 = compare("right absorbs left", "rhoR(y)rhoL(x) = -rhoR(y)rhoR(x)",
                    _pair_mm(rho_r, rho_l), -_pair_mm(rho_r, rho_r), 2)
    return all_of("Leibniz representation", "Leibniz representation", [rola1, rola2, rola3])
