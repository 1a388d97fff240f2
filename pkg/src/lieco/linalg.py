"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Everything here is
deterministic: pivots are chosen left to right, top to bottom.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[to_fraction(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> Matrix:
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n: int) -> Matrix:
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def transpose(a: Matrix) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def rref(a: Matrix, ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form of ``a`` and its pivot columns.

    If ``ncols`` is given only the first ``ncols`` columns are used as pivot
    candidates (the rest are carried along as an augmented block).
    """
    m = [list(row) for row in a]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    limit = n_cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> Matrix:
    """Basis of {x : a x = 0}, one vector per free column, in column order.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns.  ``ncols`` is needed when ``a`` has no rows.
    """
    n = len(a[0]) if a else ncols
    if n is None:
        raise ValueError("ncols required for an empty matrix")
    red, pivots = rref(a) if a else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``a x = b`` (free variables set to zero), or None."""
    if not a:
        return None if any(x != 0 for x in b) else []
    n = len(a[0])
    aug = [list(row) + [to_fraction(bi)] for row, bi in zip(a, b)]
    red, pivots = rref(aug, ncols=n)
    for row in red[len(pivots):]:
        if row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return x


def min_norm_solve(a: Matrix, b: Sequence[Fraction]) -> list[Fraction] | None:
    """The solution of ``a x = b`` with least Euclidean norm, exactly.

    It is the unique solution lying in the row space of ``a``: x = a^T y with
    (a a^T) y = b.
    """
    at = transpose(a)
    y = solve(matmul(a, at), b)
    if y is None:
        return None
    x = matvec(at, y) if at else []
    if matvec(a, x) != [to_fraction(v) for v in b]:
        return None
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    red, pivots = rref(aug, ncols=n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def row_space_basis(vectors: Sequence[Sequence[Fraction]]) -> Matrix:
    """Nonzero rows of the RREF of ``vectors``; a canonical basis of their span."""
    if not vectors:
        return []
    red, pivots = rref([list(v) for v in vectors])
    return red[: len(pivots)]


def fmt(x: Fraction) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
