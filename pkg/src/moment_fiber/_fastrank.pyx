# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free rank kernel.

Bareiss elimination on machine integers with 128-bit intermediates.  Every
working entry is a minor of the input matrix, so a Hadamard-style bound on
the input decides up front whether the computation provably fits; callers
fall back to the pure big-int path when ``OverflowError`` is raised.
"""

from libc.math cimport log2
from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef long long int128 "__int128"

# log2 bound on any minor; products of two minors then stay below 2**126.
cdef double LOG2_MINOR_LIMIT = 60.0


def rank(rows):
    """Rank over Q of a matrix given as a sequence of int rows.

    Raises OverflowError when entries are too large for the machine-integer
    path to be provably exact.
    """
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0:
        return 0
    cdef Py_ssize_t ncols = len(rows[0])
    if ncols == 0:
        return 0

    cdef Py_ssize_t i, j, col, piv, r, size, step
    cdef long long v
    cdef double norm, biggest
    cdef int128 prev, p, f
    cdef int128 *row_r
    cdef int128 *row_i

    cdef int128 *a = <int128 *> malloc(nrows * ncols * sizeof(int128))
    if a == NULL:
        raise MemoryError()
    cdef double *lognorms = <double *> malloc(nrows * sizeof(double))
    if lognorms == NULL:
        free(a)
        raise MemoryError()

    try:
        for i in range(nrows):
            row = rows[i]
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            norm = 0.0
            for j in range(ncols):
                v = row[j]  # OverflowError if it does not fit a C long long
                a[i * ncols + j] = v
                norm += (<double> v) * (<double> v)
            lognorms[i] = 0.5 * log2(norm) if norm > 1.0 else 0.0

        # Minors use at most min(nrows, ncols) rows; bound by the largest.
        size = nrows if nrows < ncols else ncols
        biggest = 0.0
        for step in range(size):
            piv = -1
            for i in range(nrows):
                if lognorms[i] >= 0.0 and (piv < 0 or lognorms[i] > lognorms[piv]):
                    piv = i
            if piv < 0:
                break
            biggest += lognorms[piv]
            lognorms[piv] = -1.0
        if biggest > LOG2_MINOR_LIMIT:
            raise OverflowError("entries too large for the compiled kernel")

        r = 0
        prev = 1
        for col in range(ncols):
            piv = -1
            for i in range(r, nrows):
                if a[i * ncols + col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    p = a[r * ncols + j]
                    a[r * ncols + j] = a[piv * ncols + j]
                    a[piv * ncols + j] = p
            row_r = a + r * ncols
            p = row_r[col]
            for i in range(r + 1, nrows):
                row_i = a + i * ncols
                f = row_i[col]
                for j in range(col + 1, ncols):
                    row_i[j] = (row_i[j] * p - f * row_r[j]) // prev
                row_i[col] = 0
            prev = p
            r += 1
            if r == nrows:
                break
        return r
    finally:
        free(lognorms)
        free(a)
