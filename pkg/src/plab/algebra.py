"""Structure-constant algebras and the base axiom checkers.

An algebra of dimension ``n`` is a tensor ``c`` of shape ``(n, n, n)`` with
``e_i o e_j = sum_k c[i, j, k] e_k``.  Kind tags (``preLie``, ``Lie``,
``Leibniz``) are only ever set by a passing checker.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

import numpy as np

from . import exactlin as el
from .errors import DimensionMismatch, KindError, SearchSpaceTooLarge
from .reports import CheckReport, all_of, compare

PRE_LIE, LIE, LEIBNIZ, UNCHECKED = "preLie", "Lie", "Leibniz", "unchecked"

DEFAULT_BUDGET = 200_000
DEFAULT_MAX_SEARCH_DIM = 3


@dataclass(frozen=True, eq=False)
class Algebra:
    product: np.ndarray
    label: str = ""
    kind: str = field(default=UNCHECKED, init=False)

    def __post_init__(self):
        c = el.array(self.product)
        if c.ndim != 3 or len(set(c.shape)) > 1:
            raise DimensionMismatch(f"structure constants must be n x n x n, got {c.shape}")
        object.__setattr__(self, "product", c)

    @property
    def dim(self) -> int:
        return self.product.shape[0]

    def mul(self, x, y) -> np.ndarray:
        return el.contract(self.product, x, y)

    def left(self) -> np.ndarray:
        """Stack of left multiplications, ``L[i] @ v = e_i o v``."""
        return self.product.transpose(0, 2, 1)

    def right(self) -> np.ndarray:
        """Stack of right multiplications, ``R[i] @ v = v o e_i``."""
        return self.product.transpose(1, 2, 0)

    def same_as(self, other: "Algebra") -> bool:
        return self is other or el.equal(self.product, other.product)


def tagged(alg: Algebra, kind: str) -> Algebra:
    out = Algebra(alg.product, alg.label)
    object.__setattr__(out, "kind", kind)
    return out


def zero_algebra(n: int, label: str = "") -> Algebra:
    return Algebra(el.zeros(n, n, n), label)


def _apply(m, t) -> np.ndarray:
    """Apply the linear map ``m`` to the last axis of ``t``."""
    return el.einsum("...k,lk->...l", t, m)


def _assoc(c) -> np.ndarray:
    # (e_i o e_j) o e_k - e_i o (e_j o e_k), indexed [i, j, k, :]
    return el.einsum("ijm,mkl->ijkl", c, c) - el.einsum("jkm,iml->ijkl", c, c)


def check_pre_lie(alg: Algebra) -> CheckReport:
    a = _assoc(alg.product)
    return compare("pre-Lie", "left-symmetric associator", a, a.transpose(1, 0, 2, 3), 3)


def commutator(c) -> np.ndarray:
    return c - c.transpose(1, 0, 2)


def check_lie(alg: Algebra) -> CheckReport:
    c = alg.product
    anti = compare("antisymmetry", "[x,y] = -[y,x]", c, -c.transpose(1, 0, 2), 2)
    # [[e_i,e_j],e_k] summed cyclically
    jj = el.einsum("ijm,mkl->ijkl", c, c)
    jac = jj + jj.transpose(1, 2, 0, 3) + jj.transpose(2, 0, 1, 3)
    return all_of("Lie", "Lie algebra", [anti, compare("Jacobi", "Jacobi identity", jac, 0 * jac, 3)])


def check_leibniz(alg: Algebra) -> CheckReport:
    c = alg.product
    lhs = el.einsum("ijm,mkl->ijkl", c, c) + el.einsum("ikm,jml->ijkl", c, c)
    rhs = el.einsum("jkm,iml->ijkl", c, c)
    return compare("Leibniz", "left Leibniz identity", lhs, rhs, 3)


def _check_square(alg: Algebra, p) -> np.ndarray:
    p = el.array(p)
    if p.shape != (alg.dim, alg.dim):
        raise DimensionMismatch(f"operator of shape {p.shape} on a {alg.dim}-dimensional algebra")
    return p


def averaging_sides(c, p) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arrays indexed [i, j, :] of P(e_i)P(e_j), P(P(e_i) e_j) and P(e_i P(e_j))."""
    pp = el.einsum("ai,bj,abk->ijk", p, p, c)
    left = _apply(p, el.einsum("ai,ajk->ijk", p, c))
    right = _apply(p, el.einsum("bj,ibk->ijk", p, c))
    return pp, left, right


def check_averaging(alg: Algebra, p) -> CheckReport:
    p = _check_square(alg, p)
    pp, left, right = averaging_sides(alg.product, p)
    return all_of("averaging", "averaging operator", [
        compare("averaging (left)", "P(x)P(y) = P(P(x)y)", pp, left, 2),
        compare("averaging (right)", "P(x)P(y) = P(xP(y))", pp, right, 2),
    ])


def verify(alg: Algebra, kind: str) -> Algebra:
    """Return ``alg`` tagged with ``kind`` or raise KindError if the checker fails."""
    if alg.kind == kind:
        return alg
    checker = {PRE_LIE: check_pre_lie, LIE: check_lie, LEIBNIZ: check_leibniz}[kind]
    rep = checker(alg)
    if not rep.passed:
        raise KindError(f"algebra {alg.label or '<anonymous>'} is not {kind}: {rep.summary()}")
    return tagged(alg, kind)


@dataclass(frozen=True, eq=False)
class AveragingAlgebra:
    """A verified pre-Lie (or Lie) algebra together with an averaging operator."""

    base: Algebra
    op: np.ndarray

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def product(self) -> np.ndarray:
        return self.base.product


def averaging_algebra(alg: Algebra, p, kind: str = PRE_LIE) -> AveragingAlgebra:
    """Verify ``alg`` has ``kind`` and that ``p`` is averaging on it."""
    base = verify(alg, kind)
    p = _check_square(alg, p)
    rep = check_averaging(base, p)
    if not rep.passed:
        raise KindError(f"operator is not averaging: {rep.summary()}")
    return AveragingAlgebra(base, p)


def sub_adjacent_lie(alg: Algebra) -> Algebra:
    verify(alg, PRE_LIE)
    return verify(Algebra(commutator(alg.product), alg.label and f"{alg.label}-Lie"), LIE)


def induced_leibniz(avg: AveragingAlgebra) -> Algebra:
    """Bracket ``[x, y] = P(x) o y - y o P(x)``."""
    if not isinstance(avg, AveragingAlgebra):
        raise KindError("induced_leibniz needs a verified averaging algebra")
    c, p = avg.product, avg.op
    lp = el.einsum("ai,ajk->ijk", p, c)
    rp = el.einsum("ai,jak->ijk", p, c)
    return verify(Algebra(lp - rp, avg.base.label and f"{avg.base.label}-Leib"), LEIBNIZ)


def check_homomorphism(src: AveragingAlgebra, dst: AveragingAlgebra, f) -> CheckReport:
    f = el.array(f)
    if f.shape != (dst.dim, src.dim):
        raise DimensionMismatch(f"map of shape {f.shape} from dim {src.dim} to dim {dst.dim}")
    lhs = _apply(f, src.product)
    rhs = el.einsum("ai,bj,abk->ijk", f, f, dst.product)
    fp = el.mat_mul(f, src.op)
    pf = el.mat_mul(dst.op, f)
    return all_of("homomorphism", "homomorphism", [
        compare("multiplicative", "f(xy) = f(x)f(y)", lhs, rhs, 2),
        compare("operator", "f P = P' f", fp.T, pf.T, 1),
    ])


def search_budget(budget: int | None = None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get("PLAB_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def enumerate_matrices(shape, candidates, budget: int | None = None):
    """Yield every matrix of ``shape`` with entries from ``candidates`` (row-major order)."""
    cands = [el.q(c) for c in candidates]
    cells = int(np.prod(shape))
    total = len(cands) ** cells
    limit = search_budget(budget)
    if total > limit:
        raise SearchSpaceTooLarge(f"{total} candidates exceed the budget of {limit}")
    for combo in itertools.product(cands, repeat=cells):
        yield el.array(list(combo)).reshape(shape)


def search_averaging_operators(alg: Algebra, entry_candidates, budget: int | None = None,
                               max_dim: int = DEFAULT_MAX_SEARCH_DIM) -> list[np.ndarray]:
    if alg.dim > max_dim:
        raise SearchSpaceTooLarge(f"dimension {alg.dim} exceeds the search bound {max_dim}")
    n = alg.dim
    found = []
    for p in enumerate_matrices((n, n), entry_candidates, budget):
        pp, left, right = averaging_sides(alg.product, p)
        if el.equal(pp, left) and el.equal(pp, right):
            found.append(p)
    return found


def search_pre_lie_algebras(dim: int, entry_candidates, budget: int | None = None) -> list[Algebra]:
    """All structure-constant tensors with the given entries that pass check_pre_lie."""
    found = []
    for c in enumerate_matrices((dim, dim, dim), entry_candidates, budget):
        a = _assoc(c)
        if el.equal(a, a.transpose(1, 0, 2, 3)):
            found.append(tagged(Algebra(c), PRE_LIE))
    return found
