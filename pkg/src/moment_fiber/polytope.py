"""Exact convex-hull membership tests with dual certificates.

Both queries — "is 0 in the convex hull of the given integer points?" and
"is 0 in its relative interior?" — are answered with a certificate that
verifies by exact rational arithmetic:

* ``Inside``: explicit combination coefficients,
* ``Outside``: an integral separating functional, i.e. a one-parameter
  subgroup under which every point has (strictly / weakly) positive pairing.

The engine is a phase-one exact rational simplex with Bland's rule; the
Outside functional is the Farkas dual read off the final tableau.  Repeated
points are kept: Inside coefficients are reported per input position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import InputError


@dataclass(frozen=True)
class HullQuery:
    """A nonempty list of integer points sharing one ambient dimension."""

    points: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, points: Sequence[Sequence[int]]) -> "HullQuery":
        pts = tuple(tuple(int(x) for x in p) for p in points)
        if not pts:
            raise InputError("hull query needs at least one point")
        dim = len(pts[0])
        for p in pts:
            if len(p) != dim:
                raise InputError("hull query points have mismatched dimensions")
        return cls(pts)

    @property
    def dim(self) -> int:
        return len(self.points[0])


@dataclass(frozen=True)
class Inside:
    """Combination coefficients witnessing 0 in the (relative interior of
    the) hull; one coefficient per input point position."""

    coefficients: tuple[Fraction, ...]


@dataclass(frozen=True)
class Outside:
    """Integral separating functional (a one-parameter subgroup)."""

    functional: tuple[int, ...]


HullCertificate = Union[Inside, Outside]


def _dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _phase_one(
    columns: list[list[Fraction]], rhs: list[Fraction]
) -> tuple[list[Fraction] | None, list[Fraction] | None]:
    """Feasibility of {A x = b, x >= 0} by exact phase-one simplex.

    ``columns`` holds A column-wise.  Returns (x, None) on feasibility and
    (None, y) otherwise, where y is a Farkas dual for the original row
    orientation: y.A <= 0 componentwise and y.b > 0.
    """
    nrows = len(rhs)
    ncols = len(columns)
    flip = [Fraction(-1) if b < 0 else Fraction(1) for b in rhs]
    # Tableau rows: [structural columns | artificial columns | rhs].
    tab = [
        [columns[j][i] * flip[i] for j in range(ncols)]
        + [Fraction(1) if k == i else Fraction(0) for k in range(nrows)]
        + [rhs[i] * flip[i]]
        for i in range(nrows)
    ]
    basis = [ncols + i for i in range(nrows)]
    # Objective: minimize the sum of artificials; reduced costs after
    # pricing out the initial basis.
    obj = [Fraction(0)] * (ncols + nrows + 1)
    for j in range(ncols):
        obj[j] = -sum(tab[i][j] for i in range(nrows))
    obj[-1] = -sum(tab[i][-1] for i in range(nrows))

    total = ncols + nrows
    while True:
        enter = -1
        for j in range(total):  # Bland: smallest eligible index
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best: Fraction | None = None
        for i in range(nrows):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][-1] / a
                if (
                    best is None
                    or ratio < best
                    or (ratio == best and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            # Cannot happen for this phase-one system (artificials bound it).
            raise ArithmeticError("unbounded phase-one simplex")
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(nrows):
            if i != leave and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        if obj[enter]:
            f = obj[enter]
            obj = [a - f * b for a, b in zip(obj, tab[leave])]
        basis[leave] = enter

    value = -obj[-1]
    if value == 0:
        x = [Fraction(0)] * ncols
        for i, b in enumerate(basis):
            if b < ncols:
                x[b] = tab[i][-1]
        return x, None
    # Farkas dual from the artificial columns' reduced costs, unflipped.
    y = [(1 - obj[ncols + i]) * flip[i] for i in range(nrows)]
    return None, y


def zero_in_hull(q: HullQuery) -> HullCertificate:
    """Decide 0 in CH(points); certificate verifies exactly either way.

    Inside: coefficients >= 0 summing to 1 with zero weighted sum.
    Outside: integral functional strictly positive on every point.
    """
    d, m = q.dim, len(q.points)
    columns = [
        [Fraction(q.points[j][i]) for i in range(d)] + [Fraction(1)]
        for j in range(m)
    ]
    rhs = [Fraction(0)] * d + [Fraction(1)]
    x, y = _phase_one(columns, rhs)
    if x is not None:
        cert: HullCertificate = Inside(tuple(x))
    else:
        assert y is not None
        phi = integral_subgroup([-v for v in y[:d]])
        cert = Outside(phi)
    _check(verify_certificate(q, cert, relative_interior=False))
    return cert


def zero_in_relative_interior(q: HullQuery) -> HullCertificate:
    """Decide 0 in the relative interior of CH(points).

    A strictly positive combination exists iff {a >= 1, sum a_i p_i = 0} is
    feasible (the relation set is a cone), so strictness is LP-expressible.
    Outside: integral functional nonnegative on all points, positive on one.
    """
    d, m = q.dim, len(q.points)
    columns = [[Fraction(q.points[j][i]) for i in range(d)] for j in range(m)]
    rhs = [-sum(Fraction(q.points[j][i]) for j in range(m)) for i in range(d)]
    x, y = _phase_one(columns, rhs)
    if x is not None:
        cert: HullCertificate = Inside(tuple(v + 1 for v in x))
    else:
        assert y is not None
        phi = integral_subgroup([-v for v in y])
        cert = Outside(phi)
    _check(verify_certificate(q, cert, relative_interior=True))
    return cert


def integral_subgroup(
    functional: Sequence[Fraction | int], reduce: bool = True
) -> tuple[int, ...]:
    """Clear denominators of a rational functional into a cocharacter.

    Positive scaling keeps all pairing signs, so the result separates the
    same queries.  With ``reduce`` the entries are divided by their gcd.
    """
    fracs = [Fraction(x) for x in functional]
    scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * scale) for f in fracs]
    if reduce:
        g = math.gcd(*ints) if ints else 0
        if g > 1:
            ints = [v // g for v in ints]
    return tuple(ints)


def verify_certificate(
    q: HullQuery, cert: HullCertificate, relative_interior: bool
) -> bool:
    """Exact verification of a certificate against its query."""
    if isinstance(cert, Inside):
        coeffs = cert.coefficients
        if len(coeffs) != len(q.points):
            return False
        combo = [
            sum((c * p[i] for c, p in zip(coeffs, q.points)), Fraction(0))
            for i in range(q.dim)
        ]
        if any(v != 0 for v in combo):
            return False
        if relative_interior:
            return all(c > 0 for c in coeffs)
        return all(c >= 0 for c in coeffs) and sum(coeffs) == 1
    pairings = [_dot(cert.functional, p) for p in q.points]
    if relative_interior:
        return all(v >= 0 for v in pairings) and any(v > 0 for v in pairings)
    return all(v > 0 for v in pairings)


def _check(ok: bool) -> None:
    if not ok:  # pragma: no cover - guards an internal invariant
        raise ArithmeticError("simplex produced a non-verifying certificate")
