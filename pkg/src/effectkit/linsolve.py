"""Exact rational linear algebra.

A small two-phase simplex over ``Fraction`` (Bland's rule, so no cycling)
plus Gaussian elimination helpers. Problem sizes here are tiny, a few
dozen variables at most, so clarity beats sparsity.

Standard form for :func:`lp_solve`::

    minimize  c . x   subject to   A x = b,  x >= 0
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

Row = list[Fraction]


@dataclass
class LPResult:
    status: str
    x: Optional[list[Fraction]] = None
    value: Optional[Fraction] = None


def _frac_matrix(rows: Sequence[Sequence]) -> list[Row]:
    return [[Fraction(v) for v in row] for row in rows]


def _pivot(tab: list[Row], basis: list[int], r: int, c: int) -> None:
    piv = tab[r][c]
    tab[r] = [v / piv for v in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [v - f * p for v, p in zip(row, tab[r])]
    basis[r] = c


def _simplex(tab: list[Row], basis: list[int], ncols: int) -> str:
    """Run simplex on a tableau whose last row is the objective (minimize).

    Reduced costs live in the objective row; Bland's rule picks the
    lowest-index entering and leaving variables.
    """
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return UNBOUNDED
        _pivot(tab, basis, leave, enter)


def _price_out(tab: list[Row], basis: list[int]) -> None:
    """Make reduced costs of basic columns zero in the objective row."""
    for i, b in enumerate(basis):
        if tab[-1][b] != 0:
            f = tab[-1][b]
            tab[-1] = [v - f * p for v, p in zip(tab[-1], tab[i])]


def lp_solve(A: Sequence[Sequence], b: Sequence, c: Sequence) -> LPResult:
    """Minimize ``c . x`` subject to ``A x = b`` and ``x >= 0``, exactly."""
    A = _frac_matrix(A)
    b = [Fraction(v) for v in b]
    c = [Fraction(v) for v in c]
    m = len(A)
    n = len(c)
    for row in A:
        if len(row) != n:
            raise ValueError("constraint row length mismatch")
    for i in range(m):
        if b[i] < 0:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]

    # Phase 1: artificial variables n..n+m-1.
    width = n + m
    tab = [A[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]
           + [b[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    obj = [Fraction(0)] * n + [Fraction(1)] * m + [Fraction(0)]
    tab.append(obj)
    _price_out(tab, basis)
    status = _simplex(tab, basis, width)
    assert status == OPTIMAL  # phase-1 objective is bounded below by 0
    if tab[-1][-1] != 0:
        return LPResult(INFEASIBLE)

    # Drive artificials out of the basis; drop redundant rows.
    keep = []
    for i in range(m):
        if basis[i] >= n:
            piv = next((j for j in range(n) if tab[i][j] != 0), None)
            if piv is None:
                continue  # redundant constraint
            _pivot(tab, basis, i, piv)
        keep.append(i)
    tab = [tab[i] for i in keep] + [tab[-1]]
    basis = [basis[i] for i in keep]

    # Phase 2 on original columns only.
    tab = [row[:n] + [row[-1]] for row in tab[:-1]]
    tab.append(c + [Fraction(0)])
    _price_out(tab, basis)
    status = _simplex(tab, basis, n)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for i, bvar in enumerate(basis):
        x[bvar] = tab[i][-1]
    value = sum(ci * xi for ci, xi in zip(c, x))
    return LPResult(OPTIMAL, x, value)


def lp_feasible(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """A nonnegative solution of ``A x = b``, or None."""
    n = len(A[0]) if A else 0
    res = lp_solve(A, b, [Fraction(0)] * n)
    return res.x if res.status == OPTIMAL else None


def gauss_solve(A: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One exact solution of ``A x = b`` over the rationals, or None."""
    A = _frac_matrix(A)
    b = [Fraction(v) for v in b]
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [A[i] + [b[i]] for i in range(m)]
    pivots = []
    r = 0
    for col in range(n):
        pivot_row = next((i for i in range(r, m) if aug[i][col] != 0), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        aug[r] = [v / aug[r][col] for v in aug[r]]
        for i in range(m):
            if i != r and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [v - f * p for v, p in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][-1] != 0:
            return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = aug[i][-1]
    return x


def matrix_rank(A: Sequence[Sequence]) -> int:
    A = _frac_matrix(A)
    m = len(A)
    n = len(A[0]) if A else 0
    r = 0
    for col in range(n):
        pivot_row = next((i for i in range(r, m) if A[i][col] != 0), None)
        if pivot_row is None:
            continue
        A[r], A[pivot_row] = A[pivot_row], A[r]
        A[r] = [v / A[r][col] for v in A[r]]
        for i in range(m):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [v - f * p for v, p in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r
