"""Exact linear algebra over integers and rationals.

Rank questions here decide chain stabilization, which is an exact yes/no
matter, so floating-point elimination is banned.  The hot path (rank of
many small 0-1 matrices) uses fraction-free Bareiss elimination on plain
ints; basis extraction uses reduced echelon form over Fraction.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

IntRows = Sequence[Sequence[int]]


def identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: IntRows, b: IntRows) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("inner dimensions differ")
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def mat_pow(m: IntRows, k: int) -> list[list[int]]:
    n = len(m)
    result = identity_rows(n)
    for _ in range(k):
        result = mat_mul(result, m)
    return result


def mat_vec(m: IntRows, v: Sequence[Fraction | int]) -> list[Fraction]:
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in m]


def rank_int(rows: IntRows) -> int:
    """Rank by fraction-free (Bareiss) elimination; exact for integer input."""
    m = [list(row) for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        piv = next((r for r in range(rank, n_rows) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, n_rows):
            factor = m[r][col]
            row_r = m[r]
            row_p = m[rank]
            for c in range(col, n_cols):
                q, rem = divmod(row_r[c] * pivot - factor * row_p[c], prev)
                assert rem == 0, "Bareiss exact-division invariant broken"
                row_r[c] = q
        prev = pivot
        rank += 1
    return rank


def rref(rows: Sequence[Sequence[Fraction | int]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Fraction; returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots: list[int] = []
    r = 0
    for col in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    return m, pivots


def nullspace_basis(rows: Sequence[Sequence[Fraction | int]]) -> list[tuple[Fraction, ...]]:
    """Basis of {v : A v = 0}, one vector per free column of A."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    reduced, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n_cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for row_idx, piv_col in enumerate(pivots):
            vec[piv_col] = -reduced[row_idx][free]
        basis.append(tuple(vec))
    return basis


def column_space_basis(rows: Sequence[Sequence[int]]) -> list[tuple[Fraction, ...]]:
    """Original pivot columns of A, spanning its column space."""
    _, pivots = rref(rows)
    return [tuple(Fraction(row[c]) for row in rows) for c in pivots]


def rank_of_columns(vectors: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank of the matrix whose columns are the given vectors."""
    if not vectors:
        return 0
    rows = [[Fraction(vec[i]) for vec in vectors] for i in range(len(vectors[0]))]
    _, pivots = rref(rows)
    return len(pivots)
