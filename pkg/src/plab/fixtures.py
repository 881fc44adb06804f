"""Small certified examples used by the tests, demos and the shipped workspace.

Examples marked "search" were found by exhaustive enumeration over entries in
{-1, 0, 1} with the package's own checkers and then frozen here.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import exactlin as el
from .algebra import Algebra, AveragingAlgebra, averaging_algebra, zero_algebra
from .bialgebra import (AvgBialgebra, Coalgebra, bialgebra_matched_pair, bialgebra_to_manin, manin_form,
                        zero_coalgebra)
from .matched_pairs import MatchedPair
from .representations import Representation, avg_representation, direct_sum_map
from .rota_baxter import QuadraticRB, RelativeRB, matched_pair_from_rrb, quadratic_rb


def z2() -> Algebra:
    return zero_algebra(2, "Z2")


def ut2() -> Algebra:
    """Upper triangular 2x2 matrices with ``x o y = R(x)y - yR(x) - xy``.

    Basis ``E11, E12, E22`` and ``R = diag`` projection.
    """
    c = el.zeros(3, 3, 3)
    c[0, 0, 0] = -1
    c[2, 2, 2] = -1
    c[1, 2, 1] = -1
    c[2, 1, 1] = -1
    return Algebra(c, "UT2")


def ut2_r() -> np.ndarray:
    return el.array([[1, 0, 0], [0, 0, 0], [0, 0, 1]])


def ut2_avg() -> AveragingAlgebra:
    return averaging_algebra(ut2(), ut2_r())


def n2() -> Algebra:
    """``e1 o e1 = e2``."""
    c = el.zeros(2, 2, 2)
    c[0, 0, 1] = 1
    return Algebra(c, "N2")


def a2() -> Algebra:
    """Non-commutative: ``e1 o e1 = e1``, ``e1 o e2 = e2``."""
    c = el.zeros(2, 2, 2)
    c[0, 0, 0] = 1
    c[0, 1, 1] = 1
    return Algebra(c, "A2")


def a2_p() -> np.ndarray:
    """Averaging on A2 with ``P(e1) = e1 + e2``, ``P(e2) = 0``; its Leibniz bracket is not skew."""
    return el.array([[1, 0], [1, 0]])


def a2_avg() -> AveragingAlgebra:
    return averaging_algebra(a2(), a2_p())


def sp2_form() -> np.ndarray:
    return el.array([[0, 1], [-1, 0]])


def sp2_qrb() -> QuadraticRB:
    """Zero product on dimension 2, ``B = -id/2`` of weight 1, symplectic form."""
    half = Fraction(-1, 2)
    return quadratic_rb(z2(), el.array([[half, 0], [0, half]]), 1, sp2_form())


def sp2_p() -> np.ndarray:
    return el.array([[1, 0], [0, -1]])


def ut2_coproduct() -> np.ndarray:
    """Search: nonzero coproduct making (UT2, R, Delta, R) an averaging bialgebra."""
    d = el.zeros(3, 3, 3)
    for idx in [(0, 0, 0), (0, 0, 2), (1, 1, 0), (2, 2, 0), (1, 1, 2), (2, 2, 2)]:
        d[idx] = 1
    return d


def ut2_bialgebra() -> AvgBialgebra:
    p = ut2_r()
    return AvgBialgebra(ut2(), p, Coalgebra(ut2_coproduct()), p)


def trivial_bialgebra(alg: Algebra, p) -> AvgBialgebra:
    p = el.array(p)
    return AvgBialgebra(alg, p, zero_coalgebra(alg.dim), p)


def ut2_symmetric_r() -> np.ndarray:
    """Search: symmetric solution of the R-admissible equation on (UT2, R) with nonzero coboundary."""
    return el.array([[-1, 0, -1], [0, 0, 0], [-1, 0, -1]])


def a2_double() -> tuple[Algebra, np.ndarray]:
    """Double of (A2, P) with zero coproduct: ``A2 (+) A2*`` with the coregular actions."""
    total, form, _ = bialgebra_to_manin(trivial_bialgebra(a2(), a2_p()))
    return total, form.matrix


def qrb4() -> QuadraticRB:
    """Search: the A2 double, ``B = -projection onto A`` with weight 1, and its pairing form."""
    total, _ = a2_double()
    b = el.zeros(4, 4)
    b[0, 0] = b[1, 1] = -1
    return quadratic_rb(total.base, b, 1, manin_form(2))


def qrb4_p() -> np.ndarray:
    """Search: ``P1 (+) -P1^T`` with ``P1(e1) = e2``."""
    p1 = el.array([[0, 0], [1, 0]])
    return direct_sum_map(p1, -p1.T)


def quad4() -> tuple[AveragingAlgebra, np.ndarray]:
    """The A2 double as a 4-dim quadratic averaging algebra."""
    return a2_double()


def ut2_rrb() -> RelativeRB:
    """Search: regular module of (UT2, R) with ``alpha = E22`` and ``T(e1) = e2``."""
    avg = ut2_avg()
    alg = avg.base
    alpha = el.zeros(3, 3)
    alpha[1, 1] = 1
    t = el.zeros(3, 3)
    t[1, 0] = 1
    return RelativeRB(avg, avg_representation(avg, Representation(alg, alg.left(), alg.right()), alpha), t)


def unbalanced_bialgebra() -> AvgBialgebra:
    """Search: a coproduct on the A2 double that is compatible but not balanced (P = S = 0)."""
    total, _ = a2_double()
    d = el.zeros(4, 4, 4)
    d[0, 0, 0] = -1
    d[1, 0, 1] = d[1, 2, 1] = 1
    d[2, 0, 2] = d[2, 2, 0] = -1
    d[3, 0, 3] = -1
    z = el.zeros(4, 4)
    return AvgBialgebra(total.base, z, Coalgebra(d), z)


def z2_rrb() -> RelativeRB:
    """Regular module of Z2 with ``P = alpha = T = id``."""
    avg = averaging_algebra(z2(), el.identity(2))
    alg = avg.base
    rep = avg_representation(avg, Representation(alg, alg.left(), alg.right()), el.identity(2))
    return RelativeRB(avg, rep, el.identity(2))


def zero_matched_pair(n: int = 2, m: int = 2) -> MatchedPair:
    return MatchedPair(zero_algebra(n), zero_algebra(m), el.zeros(n, m, m), el.zeros(n, m, m),
                       el.zeros(m, n, n), el.zeros(m, n, n), el.identity(n), el.identity(m))


def matched_pair_fixtures() -> dict[str, MatchedPair]:
    """Every verified averaging matched pair used in the tests."""
    return {
        "zero": zero_matched_pair(),
        "Z2 relative RB": matched_pair_from_rrb(z2_rrb()),
        "UT2 relative RB": matched_pair_from_rrb(ut2_rrb()),
        "UT2 bialgebra": bialgebra_matched_pair(ut2_bialgebra()),
        "A2 trivial bialgebra": bialgebra_matched_pair(trivial_bialgebra(a2(), a2_p())),
    }
