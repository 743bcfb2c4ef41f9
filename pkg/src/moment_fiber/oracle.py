"""Independent brute-force implementations of the fast-path criteria.

Everything here is deliberately written against different algorithms than
the main modules: ranks by cross-multiplication elimination pivoting from
the right (no Bareiss division, no compiled kernel), hull membership by
Caratheodory-style subset enumeration with exact linear solves (no
simplex), visibility by exhaustive partition search.  These routes generate
ground truth for the randomized suites; a bug cannot be shared with the
code they check.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .errors import CapabilityError, InputError
from .torus import (
    Block,
    NotVisible,
    PairPoint,
    Stratum,
    VisibleDecomposition,
    WeightMatrix,
    moment_eval,
)

_COMPONENT_LIMIT = 16
_VISIBLE_LIMIT = 8


# -- independent exact linear algebra ----------------------------------------


def _rank_crossmul(rows: Sequence[Sequence[int]]) -> int:
    """Rank by integer cross-multiplication, pivoting right-to-left.

    Entries swell (no division step), which is fine at oracle scale; the
    pivot order and update rule are both unlike the fast path.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols - 1, -1, -1):
        piv = None
        for i in range(nrows - 1, rank - 1, -1):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for i in range(rank + 1, nrows):
            f = m[i][col]
            if f:
                m[i] = [a * p - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def _solve_fractions(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[list[Fraction]]:
    """Unique-solution Gaussian solve; None if singular or inconsistent.

    Only used on square systems coming from affinely independent point
    subsets, where uniqueness is expected.
    """
    n = len(rows)
    aug = [list(map(Fraction, rows[i])) + [Fraction(rhs[i])] for i in range(n)]
    ncols = len(aug[0]) - 1
    where = []
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, n):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = 1 / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for i in range(n):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[row])]
        where.append(col)
        row += 1
    for i in range(row, n):
        if aug[i][ncols]:
            return None
    x = [Fraction(0)] * ncols
    for r, col in enumerate(where):
        x[col] = aug[r][ncols]
    return x


def _kernel_vector(rows: Sequence[Sequence[int]]) -> Optional[list[Fraction]]:
    """A nonzero kernel vector of the transpose system, or None.

    Finds v with sum_i v_i * rows[i] = 0 by solving for the last index in
    terms of the others; only called when the corank is exactly one.
    """
    k = len(rows)
    ncols = len(rows[0]) if rows else 0
    for fixed in range(k - 1, -1, -1):
        others = [rows[i] for i in range(k) if i != fixed]
        cols = [
            [Fraction(r[j]) for r in others] for j in range(ncols)
        ]
        rhs = [Fraction(-rows[fixed][j]) for j in range(ncols)]
        sol = _solve_fractions(cols, rhs)
        if sol is not None:
            v = sol[:]
            v.insert(fixed, Fraction(1))
            if any(
                sum((v[i] * rows[i][j] for i in range(k)), Fraction(0)) != 0
                for j in range(ncols)
            ):
                continue
            return v
    return None


# -- components ---------------------------------------------------------------


def brute_components(w: WeightMatrix) -> list[Stratum]:
    """All subsets I with rank(S) - rank(S_I) = n - #I, by enumeration."""
    if w.n > _COMPONENT_LIMIT:
        raise CapabilityError(
            f"brute component enumeration refused for n={w.n} > "
            f"{_COMPONENT_LIMIT}"
        )
    entries = w.matrix.entries
    total = _rank_crossmul(entries)
    out = []
    for mask in range(1 << w.n):
        rows = [entries[i] for i in range(w.n) if mask >> i & 1]
        size = len(rows)
        if total - _rank_crossmul(rows) == w.n - size:
            out.append(frozenset(i + 1 for i in range(w.n) if mask >> i & 1))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# -- visibility ----------------------------------------------------------------


def brute_visible(w: WeightMatrix) -> Union[VisibleDecomposition, NotVisible]:
    """Exhaustive search over partitions {1..n} = I_0 + I_1 + ...

    I_0 may be empty and must be independent; every other part must carry a
    unique strictly positive relation; the spans must be in direct sum.
    Returns the first success in canonical order (elements assigned
    smallest-first, I_0 before blocks, blocks by increasing bitmask).
    """
    if w.n > _VISIBLE_LIMIT:
        raise CapabilityError(
            f"brute visibility search refused for n={w.n} > {_VISIBLE_LIMIT}"
        )
    entries = w.matrix.entries
    n = w.n
    total_rank = _rank_crossmul(entries)

    rank_of_mask = {}

    def mask_rank(mask: int) -> int:
        if mask not in rank_of_mask:
            rank_of_mask[mask] = _rank_crossmul(
                [entries[i] for i in range(n) if mask >> i & 1]
            )
        return rank_of_mask[mask]

    block_relation: dict[int, Optional[tuple[Fraction, ...]]] = {}

    def valid_block(mask: int) -> Optional[tuple[Fraction, ...]]:
        """Positive full-support relation on the mask's rows, if unique."""
        if mask not in block_relation:
            rows = [entries[i] for i in range(n) if mask >> i & 1]
            rel = None
            if mask_rank(mask) == len(rows) - 1:
                v = _kernel_vector(rows)
                if v is not None and all(c != 0 for c in v):
                    if v[0] < 0:
                        v = [-c for c in v]
                    if all(c > 0 for c in v):
                        rel = tuple(v)
            block_relation[mask] = rel
        return block_relation[mask]

    full = (1 << n) - 1

    def search(
        unassigned: int, fixed: int, blocks: list[int]
    ) -> Optional[tuple[int, list[int]]]:
        if unassigned == 0:
            rank_sum = mask_rank(fixed)
            if rank_sum != bin(fixed).count("1"):
                return None
            for b in blocks:
                rank_sum += mask_rank(b)
            if rank_sum != total_rank:
                return None
            return fixed, blocks
        low = unassigned & -unassigned
        # Branch 1: lowest unassigned element joins I_0.
        cand_fixed = fixed | low
        if mask_rank(cand_fixed) == bin(cand_fixed).count("1"):
            got = search(unassigned ^ low, cand_fixed, blocks)
            if got is not None:
                return got
        # Branch 2: it starts a block; enumerate blocks inside `unassigned`.
        rest = unassigned ^ low
        sub = rest
        while True:  # all submasks of rest, visited so blocks ascend
            block = low | (rest ^ sub)
            if valid_block(block) is not None:
                got = search(unassigned ^ block, fixed, blocks + [block])
                if got is not None:
                    return got
            if sub == 0:
                break
            sub = (sub - 1) & rest
        return None

    got = search(full, 0, [])
    if got is None:
        return NotVisible(
            "exhaustive partition search: no partition satisfies the"
            " independence, unique-positive-relation and direct-sum"
            " conditions"
        )
    fixed_mask, block_masks = got
    blocks = []
    for mask in sorted(block_masks, key=lambda m: m & -m):
        rel = valid_block(mask)
        assert rel is not None
        blocks.append(
            Block(
                indices=frozenset(i + 1 for i in range(n) if mask >> i & 1),
                relation=rel,
            )
        )
    blocks.sort(key=lambda b: min(b.indices))
    return VisibleDecomposition(
        fixed=frozenset(i + 1 for i in range(n) if fixed_mask >> i & 1),
        blocks=tuple(blocks),
    )


def check_decomposition(
    w: WeightMatrix, dec: VisibleDecomposition
) -> Optional[str]:
    """Re-verify a decomposition's three conditions with oracle arithmetic.

    Returns None when every condition holds, else a description of the
    first failure.
    """
    entries = w.matrix.entries
    n = w.n
    seen: set[int] = set()
    parts = [sorted(dec.fixed)] + [sorted(b.indices) for b in dec.blocks]
    for part in parts:
        for i in part:
            if i in seen or not 1 <= i <= n:
                return f"index {i} repeated or out of range"
            seen.add(i)
    if len(seen) != n:
        return "partition does not cover {1..n}"
    fixed_rows = [entries[i - 1] for i in sorted(dec.fixed)]
    if _rank_crossmul(fixed_rows) != len(fixed_rows):
        return "I_0 is not independent"
    rank_sum = len(fixed_rows)
    for b in dec.blocks:
        rows = [entries[i - 1] for i in sorted(b.indices)]
        if _rank_crossmul(rows) != len(rows) - 1:
            return f"block {sorted(b.indices)} has the wrong rank"
        if len(b.relation) != len(rows):
            return f"block {sorted(b.indices)} relation length mismatch"
        if any(c <= 0 for c in b.relation):
            return f"block {sorted(b.indices)} relation is not positive"
        for j in range(w.r):
            s = sum(
                (c * row[j] for c, row in zip(b.relation, rows)), Fraction(0)
            )
            if s != 0:
                return f"block {sorted(b.indices)} relation does not vanish"
        rank_sum += len(rows) - 1
    if rank_sum != _rank_crossmul(entries):
        return "spans are not in direct sum"
    return None


# -- hull membership -----------------------------------------------------------


def brute_zero_in_hull(points: Sequence[Sequence[int]]) -> bool:
    """0 in CH(points) by Caratheodory enumeration of small subsets.

    Duplicates do not change the hull, so only distinct points enter the
    enumeration; a zero point settles the query immediately.
    """
    pts = sorted(set(tuple(p) for p in points))
    d = len(pts[0])
    if any(all(x == 0 for x in p) for p in pts):
        return True
    idx = range(len(pts))
    for size in range(1, d + 2):
        for combo in _combinations(list(idx), size):
            # Solve sum c_i p_i = 0, sum c_i = 1 on the subset.
            cols = [
                [Fraction(pts[i][j]) for i in combo] for j in range(d)
            ] + [[Fraction(1)] * size]
            rhs = [Fraction(0)] * d + [Fraction(1)]
            sol = _lstsq_exact(cols, rhs, size)
            if sol is not None and all(c >= 0 for c in sol):
                return True
    return False


def brute_zero_in_relative_interior(points: Sequence[Sequence[int]]) -> bool:
    """0 in the relative interior: every point joins some nonnegative
    relation, equivalently -p is in the cone of the points for each p.

    Each relation found covers its whole support at once, so points already
    seen inside a relation are not re-queried.
    """
    pts = [tuple(p) for p in points]
    if not brute_zero_in_hull(pts):
        return False
    unique = sorted(set(pts))
    covered: set[tuple[int, ...]] = set()
    for p in unique:
        if p in covered or all(x == 0 for x in p):
            continue
        combo = _cone_combination(tuple(-x for x in p), unique)
        if combo is None:
            return False
        covered.add(p)
        for point, coeff in combo:
            if coeff > 0:
                covered.add(point)
    return True


def _cone_combination(
    target: tuple[int, ...], pts: Sequence[tuple[int, ...]]
) -> Optional[list[tuple[tuple[int, ...], Fraction]]]:
    """Nonnegative combination of points equal to target, or None."""
    d = len(target)
    if all(t == 0 for t in target):
        return []
    idx = list(range(len(pts)))
    for size in range(1, d + 1):
        for combo in _combinations(idx, size):
            cols = [[Fraction(pts[i][j]) for i in combo] for j in range(d)]
            rhs = [Fraction(t) for t in target]
            sol = _lstsq_exact(cols, rhs, size)
            if sol is not None and all(c >= 0 for c in sol):
                return [(pts[i], c) for i, c in zip(combo, sol)]
    return None


def _lstsq_exact(
    rows: list[list[Fraction]], rhs: list[Fraction], nvars: int
) -> Optional[list[Fraction]]:
    """Exact solution of a (possibly overdetermined) linear system."""
    if nvars == 0:
        return [] if all(v == 0 for v in rhs) else None
    sol = _solve_fractions(rows, rhs)
    if sol is None:
        return None
    for row, b in zip(rows, rhs):
        if sum((c * v for c, v in zip(sol, row)), Fraction(0)) != b:
            return None
    return sol


def _combinations(items: list[int], size: int):
    return itertools.combinations(items, size)


# -- tangent spaces and sampling -----------------------------------------------


def tangent_dim(w: WeightMatrix, p: PairPoint) -> int:
    """Dimension of the kernel of the moment map's differential at p.

    The Jacobian has rows indexed by the torus directions; column i is
    S[i][j] * phi_i, column n+i is S[i][j] * x_i.  Columns are scaled to
    integers (rank is unchanged) and eliminated by the oracle routine.
    """
    if any(v != 0 for v in moment_eval(w, p)):
        raise InputError("point is not in the zero fiber")
    cols: list[list[int]] = []
    for i in range(w.n):
        cols.append(_scaled_column(w, i, p.phi[i]))
    for i in range(w.n):
        cols.append(_scaled_column(w, i, p.x[i]))
    return 2 * w.n - _rank_crossmul(cols)


def _scaled_column(w: WeightMatrix, i: int, factor: Fraction) -> list[int]:
    col = [Fraction(w.matrix.entries[i][j]) * factor for j in range(w.r)]
    den = math.lcm(*(v.denominator for v in col)) if col else 1
    return [int(v * den) for v in col]


def random_fiber_point(
    w: WeightMatrix, subset: Iterable[int], seed: int
) -> PairPoint:
    """A reproducible fiber point whose x-support is exactly ``subset``.

    x gets random small nonzero integers on the subset; phi is a random
    integer combination of an exact basis of the annihilator of the orbit
    tangent space at x, so the moment map vanishes by construction.
    """
    rng = random.Random(seed)
    chosen = sorted(set(subset))
    for i in chosen:
        if not 1 <= i <= w.n:
            raise InputError(f"index {i} out of range 1..{w.n}")
    x = [Fraction(0)] * w.n
    for i in chosen:
        v = 0
        while v == 0:
            v = rng.randint(-4, 4)
        x[i - 1] = Fraction(v)
    # Tangent rows: direction j moves coordinate i by S[i][j] * x_i.
    tangent = [
        [int(x[i] * w.matrix.entries[i][j]) for i in range(w.n)]
        for j in range(w.r)
    ]
    basis = _fraction_kernel(tangent, w.n)
    phi = [Fraction(0)] * w.n
    for vec in basis:
        c = rng.randint(-3, 3)
        for i in range(w.n):
            phi[i] += c * vec[i]
    point = PairPoint(tuple(x), tuple(phi))
    if any(v != 0 for v in moment_eval(w, point)):  # pragma: no cover
        raise ArithmeticError("sampled point left the fiber")
    return point


def _fraction_kernel(
    rows: Sequence[Sequence[int]], ncols: int
) -> list[list[Fraction]]:
    """Kernel basis by plain rational elimination (oracle-local)."""
    m = [[Fraction(v) for v in row] for row in rows]
    nrows = len(m)
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        piv = None
        for i in range(row, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [v * inv for v in m[row]]
        for i in range(nrows):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row])]
        pivots.append(col)
        row += 1
    basis = []
    pivot_set = set(pivots)
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -m[r][f]
        basis.append(v)
    return basis


# -- Vinberg block-dimension oracle --------------------------------------------


def vinberg_delta_blocks(inp) -> Fraction:
    """Graded-dimension difference from the block model directly:
    (sum_j k_j k_{j+1} - sum_j k_j^2 + corrections) / 2, with the +1
    replacing the corrections in the inner type-A case."""
    k = inp.k
    m0 = inp.m0
    cross = sum(k[j] * k[(j + 1) % m0] for j in range(m0))
    squares = sum(v * v for v in k)
    if inp.case == 1:
        return Fraction(cross - squares + 1)
    eps1, epsm1 = inp.eps
    eta1, etam1 = inp.eta
    corr = eps1 * eta1 * k[0] + epsm1 * etam1 * k[inp.minus_one_index()]
    return Fraction(cross - squares + corr, 2)
