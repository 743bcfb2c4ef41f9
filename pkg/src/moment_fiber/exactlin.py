"""Exact rational linear algebra on integer matrices.

All computations are exact: ranks by fraction-free Bareiss elimination,
kernels by rational back-substitution in reduced row-echelon normal form.
No floating point enters anywhere.

Row indices in the public API are 1-based, matching the weight-matrix
conventions used throughout the package (rows are numbered 1..n).

A compiled Bareiss kernel is used for ranks when the ``_fastrank``
extension built successfully; set ``MOMENT_FIBER_PURE=1`` to force the
pure-Python path.  Both paths are exact and agree bit-for-bit.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import _elim
from .errors import InputError

RatVector = tuple[Fraction, ...]

try:  # pragma: no cover - exercised indirectly
    from . import _fastrank as _fast
except ImportError:  # pragma: no cover
    _fast = None

if os.environ.get("MOMENT_FIBER_PURE", "") in ("1", "true", "yes"):
    _fast = None

USING_COMPILED_KERNEL = _fast is not None


def rank_rows(rows: Sequence[Sequence[int]]) -> int:
    """Rank of integer rows; compiled fast path with pure fallback."""
    if _fast is not None:
        try:
            return _fast.rank(rows)
        except OverflowError:
            pass
    return _elim.rank_rows(rows)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular matrix with exact integer entries.

    Zero-row matrices are legal (``cols`` is then carried explicitly);
    they arise from empty row selections and have rank 0.
    """

    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self) -> None:
        for row in self.entries:
            if len(row) != self.cols:
                raise InputError("matrix is not rectangular")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InputError(f"non-integer entry {x!r}")

    @classmethod
    def from_rows(
        cls, rows: Iterable[Iterable[int]], cols: int | None = None
    ) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not entries:
                raise InputError("zero-row matrix needs an explicit column count")
            cols = len(entries[0])
        return cls(entries, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        """Row number i (1-based)."""
        if not 1 <= i <= self.rows:
            raise InputError(f"row index {i} out of range 1..{self.rows}")
        return self.entries[i - 1]


def rank(m: IntMatrix) -> int:
    """Rank of ``m`` over the rationals."""
    return rank_rows(m.entries)


def kernel_basis(m: IntMatrix) -> list[RatVector]:
    """Basis of the right kernel {v : M v = 0}, echelon-normalized.

    The basis size is always ``cols - rank``; every vector satisfies
    M v = 0 exactly, and the output is deterministic.
    """
    return _elim.kernel_rref(m.entries, m.cols)


def row_select(m: IntMatrix, indices: Iterable[int]) -> IntMatrix:
    """Submatrix of the rows in ``indices`` (1-based), original order kept."""
    idx = sorted(set(indices))
    for i in idx:
        if not 1 <= i <= m.rows:
            raise InputError(f"row index {i} out of range 1..{m.rows}")
    return IntMatrix(tuple(m.entries[i - 1] for i in idx), m.cols)


def transpose(m: IntMatrix) -> IntMatrix:
    cols = tuple(tuple(row[j] for row in m.entries) for j in range(m.cols))
    return IntMatrix(cols, m.rows)


def solve(m: IntMatrix, rhs: Sequence) -> RatVector | None:
    """One exact rational solution of M x = rhs, or None if inconsistent."""
    if len(rhs) != m.rows:
        raise InputError("right-hand side length does not match row count")
    return _elim.solve_exact(m.entries, m.cols, rhs)


def clear_denominators(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector by the positive lcm of denominators."""
    scale = math.lcm(*(Fraction(x).denominator for x in v)) if v else 1
    return tuple(int(Fraction(x) * scale) for x in v)
