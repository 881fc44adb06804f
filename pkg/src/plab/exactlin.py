"""Exact rational linear algebra on numpy object arrays.

Entries are Python ``int`` or ``fractions.Fraction``; floats are rejected at the
boundary.  A matrix ``M`` sends basis vector ``e_j`` to ``sum_i M[i, j] e_i``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch

_INT64_SAFE = 2**62


def q(x) -> int | Fraction:
    """Coerce ``x`` to an exact rational; integral values come back as ``int``."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        f = Fraction(x.strip())
    elif isinstance(x, Rational):
        f = Fraction(x.numerator, x.denominator)
    else:
        raise TypeError(f"not an exact rational: {x!r}")
    return f.numerator if f.denominator == 1 else f


def array(data, shape=None) -> np.ndarray:
    """Object array of exact rationals built from nested sequences or an array."""
    src = np.asarray(data, dtype=object)
    out = np.empty(src.shape, dtype=object)
    for idx, v in np.ndenumerate(src):
        out[idx] = q(v)
    if shape is not None:
        out = out.reshape(shape)
    return out


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def canon(a: np.ndarray) -> np.ndarray:
    """Normalize entries (Fractions with denominator 1 become ints)."""
    return array(a)


def is_zero(a) -> bool:
    return not np.any(np.asarray(a) != 0)


def equal(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and not np.any(a != b)


def _all_int(a: np.ndarray) -> bool:
    for v in a.flat:
        if type(v) is not int:
            if isinstance(v, Fraction) and v.denominator == 1:
                continue
            return False
    return True


def _maxabs(a: np.ndarray) -> int:
    return max((abs(int(v)) for v in a.flat), default=0)


def _denominator(a: np.ndarray) -> int:
    d = 1
    for v in a.flat:
        if isinstance(v, Fraction):
            d = math.lcm(d, v.denominator)
        elif not isinstance(v, (int, np.integer)):
            raise TypeError(f"not an exact rational: {v!r}")
    return d


def _int_einsum(subscripts: str, ops: list[np.ndarray]) -> np.ndarray | None:
    bound = 1
    for o in ops:
        bound *= max(_maxabs(o), 1)
    # worst case number of summands is the product of all operand sizes
    terms = 1
    for o in ops:
        terms *= max(o.size, 1)
    if bound * terms >= _INT64_SAFE:
        return None
    iops = [o.astype(np.int64) if o.size else np.zeros(o.shape, np.int64) for o in ops]
    return np.asarray(np.einsum(subscripts, *iops)).astype(object)


def einsum(subscripts: str, *operands) -> np.ndarray:
    """Exact ``np.einsum`` on rational object arrays.

    Denominators are cleared operand by operand so that the contraction runs on
    integers; when the worst-case magnitude fits in int64 it is done natively,
    which is exact and much faster than object arithmetic.
    """
    ops = [np.asarray(o, dtype=object) for o in operands]
    scale = 1
    if not all(_all_int(o) for o in ops):
        dens = [_denominator(o) for o in ops]
        ops = [o if d == 1 else canon(o * d) for o, d in zip(ops, dens)]
        scale = math.prod(dens)
    out = _int_einsum(subscripts, ops)
    if out is None:
        out = np.asarray(np.einsum(subscripts, *ops), dtype=object)
    if scale != 1:
        out = out * Fraction(1, scale)
    return canon(out)


def mat_mul(a, b) -> np.ndarray:
    a, b = np.asarray(a, dtype=object), np.asarray(b, dtype=object)
    if a.ndim != 2 or b.ndim not in (1, 2) or a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if b.ndim == 1:
        return einsum("ij,j->i", a, b)
    return einsum("ij,jk->ik", a, b)


def transpose(a) -> np.ndarray:
    return np.asarray(a, dtype=object).T.copy()


def contract(product, x, y) -> np.ndarray:
    """``(x o y)_k = sum_ij x_i y_j c[i, j, k]``."""
    product = np.asarray(product, dtype=object)
    x, y = np.asarray(x, dtype=object), np.asarray(y, dtype=object)
    n = product.shape[0]
    if product.shape != (n, n, n) or x.shape != (n,) or y.shape != (n,):
        raise DimensionMismatch(f"product {product.shape} with vectors {x.shape}, {y.shape}")
    return einsum("i,j,ijk->k", x, y, product)


def _integer_rows(aug: np.ndarray) -> list[list[int]]:
    rows = []
    for row in aug:
        vals = [Fraction(v) for v in row]
        m = 1
        for v in vals:
            m = m * v.denominator // math.gcd(m, v.denominator)
        rows.append([int(v * m) for v in vals])
    return rows


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form over the first ``ncols`` columns, in place."""
    m = len(rows)
    prev = 1
    r = 0
    pivots = []
    width = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, m):
            lead = rows[i][c]
            ri, rr = rows[i], rows[r]
            for j in range(c + 1, width):
                num = piv * ri[j] - lead * rr[j]
                ri[j] = num // prev
            ri[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


class LinearSolution(NamedTuple):
    particular: np.ndarray
    nullspace: list


def solve_linear(a, rhs) -> LinearSolution | None:
    """Solve ``a @ x = rhs`` exactly.

    ``rhs`` may be a vector or a matrix of right-hand sides.  Returns a particular
    solution plus a nullspace basis of ``a``, or ``None`` when inconsistent.
    """
    a = np.asarray(a, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    if a.ndim != 2:
        raise DimensionMismatch("coefficient matrix must be 2-dimensional")
    vector = rhs.ndim == 1
    b = rhs.reshape(-1, 1) if vector else rhs
    m, n = a.shape
    if b.shape[0] != m:
        raise DimensionMismatch(f"rhs has {b.shape[0]} rows, expected {m}")
    k = b.shape[1]
    if m == 0:
        sol = zeros(n, k)
        null = [_unit(n, i) for i in range(n)]
        return LinearSolution(sol.reshape(n) if vector else sol, null)
    aug = np.concatenate([a, b], axis=1) if n + k else zeros(m, 0)
    rows, pivots = _bareiss_echelon(_integer_rows(aug), n)
    rank = len(pivots)
    for i in range(rank, m):
        if any(rows[i][n + j] != 0 for j in range(k)):
            return None
    free = [c for c in range(n) if c not in pivots]

    def back_substitute(rhs_col, free_vals):
        x = [Fraction(0)] * n
        for c, v in free_vals.items():
            x[c] = Fraction(v)
        for i in range(rank - 1, -1, -1):
            c = pivots[i]
            acc = Fraction(rhs_col[i]) if rhs_col is not None else Fraction(0)
            row = rows[i]
            for j in range(c + 1, n):
                if row[j]:
                    acc -= row[j] * x[j]
            x[c] = acc / row[c]
        return x

    sol = zeros(n, k)
    for j in range(k):
        col = [rows[i][n + j] for i in range(rank)]
        x = back_substitute(col, {})
        for i in range(n):
            sol[i, j] = q(x[i])
    null = []
    for f in free:
        x = back_substitute(None, {f: 1})
        null.append(array(x))
    return LinearSolution(sol.reshape(n) if vector else sol, null)


def _unit(n, i):
    v = zeros(n)
    v[i] = 1
    return v


def rank(a) -> int:
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return 0
    _, pivots = _bareiss_echelon(_integer_rows(a), a.shape[1])
    return len(pivots)


def invert(a) -> np.ndarray | None:
    a = np.asarray(a, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"cannot invert a non-square {a.shape} matrix")
    n = a.shape[0]
    if n == 0:
        return zeros(0, 0)
    if rank(a) < n:
        return None
    sol = solve_linear(a, identity(n))
    return sol.particular


def kron_apply(m, n, t) -> np.ndarray:
    """Apply ``m (x) n`` to an element ``t`` of V (x) W stored as a matrix."""
    return einsum("ai,ij,bj->ab", m, t, n)


def fmt(x) -> str:
    """Render a rational as ``p/q`` (integers as ``p``)."""
    x = q(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"
