"""Dense exact-rational linear programming via the two-phase simplex method.

Solves  min c.x  s.t.  A x = b, x >= 0  with Fraction arithmetic and Bland's
anti-cycling rule.  Intended for small instances (hundreds of variables); the
float HiGHS path in flatnorm handles anything larger.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = T[row][col]
    T[row] = [x / piv for x in T[row]]
    prow = T[row]
    for r, tr in enumerate(T):
        if r == row:
            continue
        f = tr[col]
        if f:
            T[r] = [x - f * y for x, y in zip(tr, prow)]
    basis[row] = col


def _run_simplex(T: list[list[Fraction]], basis: list[int], ncols: int) -> str:
    # Last row is the (negated) objective; last column is the RHS.
    while True:
        obj = T[-1]
        col = -1
        for j in range(ncols):
            if obj[j] < 0:  # Bland: first improving column
                col = j
                break
        if col < 0:
            return OPTIMAL
        row, best = -1, None
        for r in range(len(T) - 1):
            a = T[r][col]
            if a > 0:
                ratio = T[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[row]):
                    row, best = r, ratio
        if row < 0:
            return UNBOUNDED
        _pivot(T, basis, row, col)


def solve_eq(c: Sequence, A: Sequence[Sequence], b: Sequence):
    """Returns (status, x, value) with exact rationals; x is None unless
    status == OPTIMAL."""
    m = len(A)
    n = len(c)
    c = [Fraction(v) for v in c]
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    # Phase 1: drive artificial variables out.
    T = [rows[i] + [_ONE if j == i else _ZERO for j in range(m)] + [rhs[i]]
         for i in range(m)]
    obj = [_ZERO] * (n + m) + [_ZERO]
    for i in range(m):
        for j in range(n):
            obj[j] -= rows[i][j]
        obj[-1] -= rhs[i]
    for j in range(n, n + m):
        obj[j] = _ZERO
    T.append(obj)
    basis = list(range(n, n + m))
    status = _run_simplex(T, basis, n + m)
    if status != OPTIMAL or T[-1][-1] != 0:
        return INFEASIBLE, None, None

    # Pivot any artificial variable still basic (degenerate) onto a real one.
    for r in range(m):
        if basis[r] >= n:
            for j in range(n):
                if T[r][j] != 0:
                    _pivot(T, basis, r, j)
                    break

    # Phase 2 on the original objective, artificial columns frozen out.
    rows2 = [T[r][:n] + [T[r][-1]] for r in range(m) if basis[r] < n]
    basis2 = [v for v in basis if v < n]
    obj2 = list(c) + [_ZERO]
    for r, bv in enumerate(basis2):
        f = obj2[bv]
        if f:
            obj2 = [x - f * y for x, y in zip(obj2, rows2[r])]
    T2 = rows2 + [obj2]
    status = _run_simplex(T2, basis2, n)
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    x = [_ZERO] * n
    for r, bv in enumerate(basis2):
        x[bv] = T2[r][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), _ZERO)
    return OPTIMAL, x, value


def maximize_ub(c: Sequence, A_ub: Sequence[Sequence], b_ub: Sequence):
    """max c.y  s.t.  A_ub y <= b_ub, y free.  Returns (status, y, value).

    Free variables are split into positive parts and slacks are appended.
    """
    m = len(A_ub)
    n = len(c)
    cc = []
    for v in c:
        cc.extend((-Fraction(v), Fraction(v)))  # minimize -c.y
    cc.extend([_ZERO] * m)
    rows = []
    for i, row in enumerate(A_ub):
        r = []
        for v in row:
            r.extend((Fraction(v), -Fraction(v)))
        r.extend(_ONE if j == i else _ZERO for j in range(m))
        rows.append(r)
    status, x, value = solve_eq(cc, rows, b_ub)
    if status != OPTIMAL:
        return status, None, None
    y = [x[2 * j] - x[2 * j + 1] for j in range(n)]
    return OPTIMAL, y, -value
