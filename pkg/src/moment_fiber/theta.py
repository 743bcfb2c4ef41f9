"""Root systems, Kac-diagram gradings, and classical-case dimension counts.

A Kac diagram is an affine (possibly twisted) Dynkin diagram with one
{0,1} label per node.  It determines a cyclic grading of the corresponding
simple Lie algebra; this module computes the grading order, the graded
dimension vector for untwisted diagrams, the scans over all labelings used
by the rank-one classification, and the closed dimension-difference
formulas for the four classical families of gradings.

Cartan matrices and marks are embedded static data (Bourbaki numbering);
all roots are generated from the Cartan matrix by string closure and the
embedded marks are cross-checked against the computed highest root.

Node order for labels: the finite nodes alpha_1..alpha_l first, the affine
node last.  For twisted diagrams the finite nodes are those of the folded
diagram, in chain order away from the affine node.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from . import exactlin
from .errors import InputError, UnsupportedDiagramError

Root = tuple[int, ...]

_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

_RANK_RANGE = {
    "A": range(1, 9),
    "B": range(2, 9),
    "C": range(2, 9),
    "D": range(4, 9),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}

_FINITE_MARKS = {
    "A": lambda n: (1,) * n,
    "B": lambda n: (1,) + (2,) * (n - 1),
    "C": lambda n: (2,) * (n - 1) + (1,),
    "D": lambda n: (1,) + (2,) * (n - 3) + (1, 1),
    "E": lambda n: {
        6: (1, 2, 2, 3, 2, 1),
        7: (2, 2, 3, 4, 3, 2, 1),
        8: (2, 3, 4, 6, 5, 4, 3, 2),
    }[n],
    "F": lambda n: (2, 3, 4, 2),
    "G": lambda n: (3, 2),
}

# Twisted affine diagrams: (family, rank, twist) -> marks in node order
# (alpha_1..alpha_l, affine node).  l+1 is the node count.
_TWISTED_MARKS: dict[tuple[str, int, int], tuple[int, ...]] = {}
_TWISTED_MARKS[("A", 2, 2)] = (1, 2)
for _n in range(2, 9):  # A_{2n}^{(2)}: marks 2,...,2,1 plus affine mark 2
    _TWISTED_MARKS[("A", 2 * _n, 2)] = (2,) * (_n - 1) + (1, 2)
for _n in range(3, 9):  # A_{2n-1}^{(2)}: folded C_n
    _TWISTED_MARKS[("A", 2 * _n - 1, 2)] = (1,) + (2,) * (_n - 2) + (1, 1)
for _n in range(2, 9):  # D_{n+1}^{(2)}: folded B_n, all marks 1
    _TWISTED_MARKS[("D", _n + 1, 2)] = (1,) * (_n + 1)
_TWISTED_MARKS[("E", 6, 2)] = (2, 3, 2, 1, 1)
_TWISTED_MARKS[("D", 4, 3)] = (2, 1, 1)


def _cartan_matrix(family: str, rank: int) -> list[list[int]]:
    """C[i][j] = <alpha_i, alpha_j^vee>, 0-indexed Bourbaki numbering."""
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i][j] = cij
        c[j][i] = cji

    if family in ("A", "B", "C"):
        for i in range(n - 2):
            bond(i, i + 1)
        if n >= 2:
            if family == "A":
                bond(n - 2, n - 1)
            elif family == "B":  # alpha_n short
                bond(n - 2, n - 1, -2, -1)
            else:  # C: alpha_n long
                bond(n - 2, n - 1, -1, -2)
    elif family == "D":
        for i in range(n - 3):
            bond(i, i + 1)
        bond(n - 3, n - 2)
        bond(n - 3, n - 1)
    elif family == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, n - 1):
            bond(i, i + 1)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -2, -1)  # alpha_3, alpha_4 short
        bond(2, 3)
    elif family == "G":
        bond(0, 1, -1, -3)  # alpha_1 short
    else:  # pragma: no cover
        raise InputError(f"unknown family {family!r}")
    return c


@dataclass(frozen=True)
class RootSystem:
    """All roots of a finite simple type, as coefficient vectors over the
    simple-root basis, plus the marks of the associated affine diagram."""

    family: str
    rank: int
    roots: tuple[Root, ...]
    finite_marks: tuple[int, ...]
    highest_root: Root

    @property
    def affine_marks(self) -> tuple[int, ...]:
        """Marks in node order (alpha_1..alpha_n, affine node)."""
        return self.finite_marks + (1,)

    @property
    def coxeter_number(self) -> int:
        return sum(self.affine_marks)


def _validate_type(family: str, rank: int) -> None:
    if family not in _FAMILIES:
        raise InputError(f"unknown family {family!r}")
    if rank not in _RANK_RANGE[family]:
        raise InputError(
            f"rank {rank} outside the supported range for type {family}"
        )


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    """Generate the full root system by string closure from the Cartan
    matrix; the embedded marks must match the computed highest root."""
    _validate_type(family, rank)
    cartan = _cartan_matrix(family, rank)
    n = rank
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    positive: set[Root] = set(simple)
    frontier = list(simple)
    while frontier:
        new: list[Root] = []
        for alpha in frontier:
            for i in range(n):
                # alpha + alpha_i is a root iff the alpha_i-string through
                # alpha extends: p - <alpha, alpha_i^vee> > 0.
                p = 0
                down = list(alpha)
                while True:
                    down[i] -= 1
                    if min(down) < 0 or tuple(down) not in positive:
                        break
                    p += 1
                pairing = sum(alpha[j] * cartan[j][i] for j in range(n))
                if p - pairing > 0:
                    up = list(alpha)
                    up[i] += 1
                    cand = tuple(up)
                    if cand not in positive:
                        positive.add(cand)
                        new.append(cand)
        frontier = new
    highest = max(positive, key=lambda r: (sum(r), r))
    marks = _FINITE_MARKS[family](rank)
    if tuple(highest) != tuple(marks):
        raise ArithmeticError(
            f"embedded marks for {family}{rank} disagree with the computed"
            f" highest root {highest}"
        )
    roots = tuple(sorted(positive)) + tuple(
        sorted(tuple(-x for x in r) for r in positive)
    )
    return RootSystem(
        family=family,
        rank=rank,
        roots=roots,
        finite_marks=marks,
        highest_root=highest,
    )


# -- Kac diagrams --------------------------------------------------------------


@dataclass(frozen=True)
class KacDiagram:
    """An affine (possibly twisted) Dynkin diagram with {0,1} node labels.

    ``labels`` follows the node order alpha_1..alpha_l, affine node last.
    """

    family: str
    rank: int
    twist: int
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        marks = _marks_for(self.family, self.rank, self.twist)
        if len(self.labels) != len(marks):
            raise InputError(
                f"{self.name()} needs {len(marks)} labels, got"
                f" {len(self.labels)}"
            )
        if any(v not in (0, 1) for v in self.labels):
            raise InputError("labels must be 0 or 1")
        if not any(self.labels):
            raise InputError("at least one label must be nonzero")

    @classmethod
    def of(
        cls,
        family: str,
        rank: int,
        labels: Iterable[int],
        twist: int = 1,
    ) -> "KacDiagram":
        return cls(family, rank, twist, tuple(int(v) for v in labels))

    @classmethod
    def all_ones(cls, family: str, rank: int, twist: int = 1) -> "KacDiagram":
        marks = _marks_for(family, rank, twist)
        return cls(family, rank, twist, (1,) * len(marks))

    def name(self) -> str:
        return f"{self.family}{self.rank}^({self.twist})"

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def is_all_ones(self) -> bool:
        return all(v == 1 for v in self.labels)


def _marks_for(family: str, rank: int, twist: int) -> tuple[int, ...]:
    if twist == 1:
        _validate_type(family, rank)
        return build_root_system(family, rank).affine_marks
    key = (family, rank, twist)
    if key not in _TWISTED_MARKS:
        raise InputError(
            f"no twisted affine diagram {family}{rank}^({twist}) is supported"
        )
    return _TWISTED_MARKS[key]


def kac_order(d: KacDiagram) -> int:
    """Order of the grading: twist times the marks-weighted label sum."""
    marks = _marks_for(d.family, d.rank, d.twist)
    return d.twist * sum(a * v for a, v in zip(marks, d.labels))


@dataclass(frozen=True)
class GradedDims:
    """Dimension vector of the cyclic grading defined by a Kac diagram.

    For untwisted diagrams ``dims`` covers every degree mod ``order``
    (``complete`` is True).  For twisted all-ones diagrams only degrees
    0 and 1 are produced.
    """

    order: int
    dims: tuple[int, ...]
    complete: bool = True

    def dim(self, j: int) -> int:
        if self.complete:
            return self.dims[j % self.order]
        if j % self.order in (0, 1):
            return self.dims[j % self.order]
        raise UnsupportedDiagramError(
            "only degrees 0 and 1 are available for this diagram"
        )

    @property
    def delta(self) -> int:
        """dim in degree 1 minus dim in degree 0."""
        return self.dim(1) - self.dim(0)


# The one richer twisted record the library will hand out (behind a flag):
# the remaining exceptional normal rank-one diagram, with its degree-0/1
# dimensions taken from the classification tables.
TWISTED_TABLE_RECORDS: dict[KacDiagram, tuple[int, int]] = {}


def _register_twisted_records() -> None:
    d = KacDiagram.of("E", 6, (1, 0, 1, 1, 1), twist=2)
    # 0-labelled part is a single node (three-dimensional algebra) plus a
    # three-dimensional centre; degree 1 exceeds degree 0 by one.
    TWISTED_TABLE_RECORDS[d] = (6, 7)


_register_twisted_records()


def graded_dims(d: KacDiagram, allow_twisted_table: bool = False) -> GradedDims:
    """Graded dimensions for a Kac diagram.

    Untwisted: the degree of a root sum(k_i alpha_i) is sum(k_i v_i) mod m;
    the degree-0 part additionally carries the Cartan subalgebra.  Twisted
    diagrams are supported for the all-ones labeling (degrees 0 and 1 are
    forced: Cartan in degree 0, one line per node in degree 1) and, behind
    ``allow_twisted_table``, for the embedded table records.
    """
    m = kac_order(d)
    if d.twist != 1:
        if d.is_all_ones:
            l = d.node_count - 1
            return GradedDims(order=m, dims=(l, l + 1), complete=False)
        if allow_twisted_table and d in TWISTED_TABLE_RECORDS:
            return GradedDims(
                order=m, dims=TWISTED_TABLE_RECORDS[d], complete=False
            )
        raise UnsupportedDiagramError(
            f"twisted diagram {d.name()} with labels {d.labels} is outside"
            " the supported range (all-ones only)"
        )
    rs = build_root_system(d.family, d.rank)
    dims = [0] * m
    dims[0] += d.rank
    finite_labels = d.labels[:-1]
    for root in rs.roots:
        deg = sum(k * v for k, v in zip(root, finite_labels)) % m
        dims[deg] += 1
    gd = GradedDims(order=m, dims=tuple(dims), complete=True)
    _check_graded(rs, gd)
    return gd


def _check_graded(rs: RootSystem, gd: GradedDims) -> None:
    if sum(gd.dims) != len(rs.roots) + rs.rank:
        raise ArithmeticError("graded dimensions do not sum to dim(algebra)")
    for j in range(gd.order):
        if gd.dims[j] != gd.dims[-j % gd.order]:
            raise ArithmeticError("graded dimensions are not symmetric")


def zero_part_semisimple_rank(d: KacDiagram) -> int:
    """Rank of the degree-0 root subsystem (untwisted diagrams).

    Equals the number of 0-labelled nodes: the semisimple part of the
    degree-0 subalgebra is read off the 0-labelled subdiagram.
    """
    if d.twist != 1:
        raise UnsupportedDiagramError("only untwisted diagrams supported")
    m = kac_order(d)
    rs = build_root_system(d.family, d.rank)
    finite_labels = d.labels[:-1]
    degree_zero = [
        root
        for root in rs.roots
        if sum(k * v for k, v in zip(root, finite_labels)) % m == 0
    ]
    return exactlin.rank_rows(degree_zero) if degree_zero else 0


# -- labeling scans -------------------------------------------------------------


def _all_labelings(node_count: int):
    for mask in range(1, 1 << node_count):
        yield tuple(mask >> i & 1 for i in range(node_count))


def rank1_dim_filter(family: str, rank: int, twist: int = 1) -> list[KacDiagram]:
    """All {0,1}-labelings whose grading gains exactly one dimension from
    degree 0 to degree 1."""
    if twist != 1:
        raise UnsupportedDiagramError(
            "labeling scans over twisted diagrams are not supported"
        )
    marks = _marks_for(family, rank, twist)
    out = []
    for labels in _all_labelings(len(marks)):
        d = KacDiagram(family, rank, twist, labels)
        if graded_dims(d).delta == 1:
            out.append(d)
    return out


@dataclass(frozen=True)
class ScanHit:
    diagram: KacDiagram
    order: int
    delta: int


def levi_order_scan(
    family: str, rank: int, min_delta: int = 2
) -> list[ScanHit]:
    """All untwisted {0,1}-labelings with degree-1 excess at least
    ``min_delta``, together with their grading orders."""
    marks = _marks_for(family, rank, 1)
    out = []
    for labels in _all_labelings(len(marks)):
        d = KacDiagram(family, rank, 1, labels)
        gd = graded_dims(d)
        if gd.delta >= min_delta:
            out.append(ScanHit(diagram=d, order=gd.order, delta=gd.delta))
    return out


# -- classical gradings: closed dimension formulas ------------------------------


@dataclass(frozen=True)
class VinbergClassicalInput:
    """Eigenvalue-block data of a classical graded automorphism.

    ``case`` 1..4: inner on the special linear algebra; orthogonal;
    symplectic; outer on the special linear algebra.  ``k`` holds the
    eigenspace dimensions over Z_{m0}; ``eta`` records whether +1 and -1
    are eigenvalues (signs +1/-1), fixed to None in case 1.
    """

    case: int
    m0: int
    k: tuple[int, ...]
    eta: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        if self.case not in (1, 2, 3, 4):
            raise InputError("case must be 1..4")
        if self.m0 < 1 or len(self.k) != self.m0:
            raise InputError("k must have exactly m0 entries")
        if any(v < 0 for v in self.k):
            raise InputError("eigenspace dimensions must be nonnegative")
        if self.case == 1:
            return
        if self.eta is None:
            raise InputError("cases 2..4 need the eta signs")
        eta1, etam1 = self.eta
        if eta1 not in (1, -1) or etam1 not in (1, -1):
            raise InputError("eta entries must be +1 or -1")
        expected = 1 if (eta1 == 1) == (self.m0 % 2 == 0) else -1
        if etam1 != expected:
            raise InputError(
                "eta[-1] is inconsistent with eta[+1] and the parity of m0"
            )
        for j in range(self.m0):
            if self.k[j] != self.k[self.conj(j)]:
                raise InputError(
                    f"duality symmetry violated: k[{j}] != k[{self.conj(j)}]"
                )

    @property
    def eps(self) -> tuple[int, int]:
        return {2: (1, 1), 3: (-1, -1), 4: (1, -1)}[self.case]

    def conj(self, j: int) -> int:
        """Index of the conjugate eigenvalue."""
        eta1 = self.eta[0] if self.eta else 1
        if eta1 == 1:
            return (-j) % self.m0
        return (-j - 1) % self.m0

    def minus_one_index(self) -> int:
        """Index whose eigenvalue has minimal real part."""
        eta1 = self.eta[0] if self.eta else 1
        if eta1 == 1:
            return self.m0 // 2
        return (self.m0 - 1) // 2

    def real_indices(self) -> frozenset[int]:
        """Indices whose eigenvalue is +1 or -1."""
        out = set()
        eta1 = self.eta[0] if self.eta else 1
        if eta1 == 1:
            out.add(0)
            if self.m0 % 2 == 0:
                out.add(self.m0 // 2)
        elif self.m0 % 2 == 1:
            out.add((self.m0 - 1) // 2)
        return frozenset(out)


def vinberg_delta(inp: VinbergClassicalInput) -> int:
    """Degree-1 minus degree-0 dimension from the closed formulas.

    Case 1: 1 - (1/2) sum_j (k_j - k_{j+1})^2.  Cases 2..4: a quarter of
    -sum_j (k_j - k_{j+1})^2 plus the eps/eta-signed corrections carried
    by the eigenvalues +1 and -1.
    """
    k, m0 = inp.k, inp.m0
    diffs = sum((k[j] - k[(j + 1) % m0]) ** 2 for j in range(m0))
    if inp.case == 1:
        val = 1 - Fraction(diffs, 2)
    else:
        eps1, epsm1 = inp.eps
        eta1, etam1 = inp.eta  # type: ignore[misc]
        val = Fraction(
            -diffs + 2 * eps1 * eta1 * k[0]
            + 2 * epsm1 * etam1 * k[inp.minus_one_index()],
            4,
        )
    if val.denominator != 1:
        raise InputError(
            "block data does not describe an integral grading"
            f" (delta = {val})"
        )
    return int(val)
