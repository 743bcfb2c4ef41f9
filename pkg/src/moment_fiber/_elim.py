"""Pure-Python fraction-free elimination kernels.

Everything here works on plain sequences of Python ints (rows of a matrix)
and stays exact: Bareiss elimination for ranks, rational back-substitution
for kernels and linear solves.  ``exactlin`` wraps these behind the public
matrix types and swaps in the compiled kernel for ``rank_rows`` when the
extension is available.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Rows = Sequence[Sequence[int]]


def rank_rows(rows: Rows) -> int:
    """Rank over Q of an integer matrix, by fraction-free Bareiss elimination.

    Pivoting is deterministic: columns left to right, first nonzero row.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            f = m[i][col]
            row_i = m[i]
            row_p = m[rank]
            for j in range(col + 1, ncols):
                # Bareiss: exact integer division by the previous pivot.
                row_i[j] = (row_i[j] * p - f * row_p[j]) // prev
            row_i[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def echelon_fractions(rows: Rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form over Q.

    Returns the RREF rows (zero rows dropped) and the pivot column indices.
    Deterministic for fixed input, so downstream kernel bases are canonical.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for i in range(nrows):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    return m[:rank], pivots


def kernel_rref(rows: Rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel {v : M v = 0}, in RREF normal form.

    One basis vector per free column f: the f-entry is 1, pivot entries are
    read off the RREF, all other free entries are 0.
    """
    rref, pivots = echelon_fractions(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rref[r][f]
        basis.append(tuple(v))
    return basis


def solve_exact(
    rows: Rows, ncols: int, rhs: Sequence
) -> Optional[tuple[Fraction, ...]]:
    """One exact solution of M x = rhs, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, pivots = echelon_fractions(aug)
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None  # pivot in the rhs column: inconsistent
        x[p] = rref[r][ncols]
    return tuple(x)
