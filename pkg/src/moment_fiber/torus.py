"""Decision procedures for a torus representation given by its weights.

A rank-r torus acting diagonally on n coordinate lines is encoded by the
n x r integer weight matrix S (row i is the weight of the i-th line).
Everything about the zero fiber of the moment map on V + V* is decided
exactly from S: strata dimensions and modality, the irreducible components
of the fiber, irreducibility/normality, stability, the visibility
decomposition, Cartan subspaces, orbit-closure questions for fiber points,
the support of the symplectic reduction, and explicit smooth points.

Indices are 1-based: subsets I live inside {1..n}.  All certificates
(hull combinations, separating cocharacters, block relations) verify by
exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from . import exactlin, polytope
from .errors import CapabilityError, InputError, NotVisibleError
from .exactlin import IntMatrix, RatVector
from .polytope import HullQuery, Inside, Outside

Stratum = frozenset[int]

_WITNESS_SCAN_LIMIT = 22  # subsets of I_d enumerated by the circuit search


@dataclass(frozen=True)
class WeightMatrix:
    """Integer weight matrix S with n >= 1 rows and r >= 1 columns."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.rows < 1 or self.matrix.cols < 1:
            raise InputError("weight matrix needs n >= 1 rows and r >= 1 columns")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "WeightMatrix":
        return cls(IntMatrix.from_rows(rows))

    @property
    def n(self) -> int:
        return self.matrix.rows

    @property
    def r(self) -> int:
        return self.matrix.cols

    def weight(self, i: int) -> tuple[int, ...]:
        return self.matrix.row(i)


@dataclass(frozen=True)
class PairPoint:
    """A point (x, phi) of V + V*, coordinates exact rationals.

    phi is written in the basis dual to the coordinate lines, so its
    weights are the negated rows of S.
    """

    x: RatVector
    phi: RatVector

    @classmethod
    def of(cls, x: Sequence, phi: Sequence) -> "PairPoint":
        return cls(
            tuple(Fraction(v) for v in x), tuple(Fraction(v) for v in phi)
        )


@dataclass(frozen=True)
class ComponentSet:
    """Irreducible components of the moment-map zero fiber."""

    components: Optional[tuple[Stratum, ...]]  # None when capped to a count
    count: int
    fiber_dimension: int
    irreducible: bool
    normal: bool


@dataclass(frozen=True)
class Block:
    """One positive block of a visibility decomposition.

    ``relation`` pairs each index of ``indices`` (sorted) with a strictly
    positive rational coefficient; the weighted sum of the block's weights
    vanishes.
    """

    indices: Stratum
    relation: tuple[Fraction, ...]


@dataclass(frozen=True)
class VisibleDecomposition:
    fixed: Stratum  # I_0, the free part (coincides with I_f)
    blocks: tuple[Block, ...]


@dataclass(frozen=True)
class NotVisible:
    reason: str


@dataclass(frozen=True)
class Nilpotent:
    functional: Outside
    is_nilpotent = True
    is_semisimple = False


@dataclass(frozen=True)
class Semisimple:
    combination: Inside
    is_nilpotent = False
    is_semisimple = True


@dataclass(frozen=True)
class Mixed:
    hull: Inside
    interior: Outside
    is_nilpotent = False
    is_semisimple = False


@dataclass(frozen=True)
class ZeroOrbit:
    """The origin: simultaneously semisimple and nilpotent."""

    is_nilpotent = True
    is_semisimple = True


Classification = Union[Nilpotent, Semisimple, Mixed, ZeroOrbit]


@dataclass(frozen=True)
class Closed:
    x_combination: Optional[Inside]  # None for x = 0
    phi_combination: Optional[Inside]


@dataclass(frozen=True)
class NotClosed:
    """A destabilizing cocharacter: pairings >= 0 on supp(x), <= 0 on
    supp(phi), strict somewhere; the limit point drops to a smaller
    stratum."""

    cocharacter: tuple[int, ...]
    limit: PairPoint


@dataclass(frozen=True)
class UnknownClosedness:
    reason: str


Closedness = Union[Closed, NotClosed, UnknownClosedness]


@dataclass(frozen=True)
class ClosedPairWitness:
    """A fiber point with closed orbit whose x-part is nilpotent.

    ``relation`` is a full-length integer vector: a mixed-sign dependency
    among the weights; x is the indicator of its positive part, phi of the
    negative part.  The monomial prod x_i^{b_i} prod phi_i^{b_i} over the
    relation's support is an invariant taking value 1 at the witness.
    """

    pair: PairPoint
    relation: tuple[int, ...]


# -- internal helpers -------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _mask_rank(entries: tuple[tuple[int, ...], ...], mask: int) -> int:
    rows = [entries[i] for i in range(len(entries)) if mask >> i & 1]
    return exactlin.rank_rows(rows)


def _full_mask(n: int) -> int:
    return (1 << n) - 1


def _mask_of(w: WeightMatrix, subset: Iterable[int]) -> int:
    mask = 0
    for i in subset:
        if not 1 <= i <= w.n:
            raise InputError(f"index {i} out of range 1..{w.n}")
        mask |= 1 << (i - 1)
    return mask


def _set_of(mask: int) -> Stratum:
    return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _rank_subset(w: WeightMatrix, mask: int) -> int:
    return _mask_rank(w.matrix.entries, mask)


def support(vec: Sequence) -> Stratum:
    """Indices (1-based) of the nonzero coordinates."""
    return frozenset(i + 1 for i, v in enumerate(vec) if Fraction(v) != 0)


def weights_of(w: WeightMatrix, subset: Iterable[int]) -> list[tuple[int, ...]]:
    return [w.weight(i) for i in sorted(set(subset))]


# -- moment map and strata ---------------------------------------------------


def moment_eval(w: WeightMatrix, p: PairPoint) -> RatVector:
    """Value of the moment map at (x, phi): component j is
    sum_i S[i][j] * x_i * phi_i."""
    if len(p.x) != w.n or len(p.phi) != w.n:
        raise InputError(f"pair point length does not match n={w.n}")
    out = []
    for j in range(w.r):
        out.append(
            sum(
                (Fraction(w.matrix.entries[i][j]) * p.x[i] * p.phi[i]
                 for i in range(w.n)),
                Fraction(0),
            )
        )
    return tuple(out)


def stratum_orbit_dim(w: WeightMatrix, subset: Iterable[int]) -> int:
    """Orbit dimension along the stratum with support ``subset``:
    rank of the selected weight rows."""
    return _rank_subset(w, _mask_of(w, subset))


def modality(w: WeightMatrix, subset: Iterable[int]) -> int:
    """#I - rank(S_I): parameters of orbits inside the stratum."""
    mask = _mask_of(w, subset)
    return bin(mask).count("1") - _rank_subset(w, mask)


def global_modality(w: WeightMatrix) -> int:
    """n - rank(S): modality of the whole representation."""
    return w.n - _rank_subset(w, _full_mask(w.n))


def split_indices(w: WeightMatrix) -> tuple[Stratum, Stratum]:
    """(I_d, I_f): indices whose deletion keeps / drops the rank of S."""
    full = _full_mask(w.n)
    total = _rank_subset(w, full)
    dependent = set()
    for i in range(1, w.n + 1):
        if _rank_subset(w, full ^ (1 << (i - 1))) == total:
            dependent.add(i)
    i_d = frozenset(dependent)
    return i_d, frozenset(range(1, w.n + 1)) - i_d


def is_locally_free(w: WeightMatrix) -> bool:
    """True iff rank(S) = r, i.e. generic orbits have full dimension."""
    return _rank_subset(w, _full_mask(w.n)) == w.r


def kernel_of_action(w: WeightMatrix) -> list[RatVector]:
    """Basis of {t : S t = 0}; empty iff the action is effective
    at the Lie-algebra level."""
    return exactlin.kernel_basis(w.matrix)


def reduce_to_effective(w: WeightMatrix) -> WeightMatrix:
    """Select a maximal independent set of columns of S.

    Every column is a rational combination of the kept ones, so the rank of
    every row subset is preserved; the reduced action is locally free.
    """
    cols = exactlin.transpose(w.matrix).entries
    _, keep = _independent_prefix(cols)
    if not keep:
        raise CapabilityError(
            "the action is trivial (all weights vanish); there is no"
            " effective form with a positive-rank torus"
        )
    rows = tuple(tuple(row[j] for j in keep) for row in w.matrix.entries)
    return WeightMatrix(IntMatrix(rows, len(keep)))


def _independent_prefix(
    vectors: Sequence[Sequence[int]],
) -> tuple[int, list[int]]:
    """Greedy scan keeping each vector that raises the rank."""
    kept: list[int] = []
    cur = 0
    for idx in range(len(vectors)):
        rows = [vectors[i] for i in kept] + [vectors[idx]]
        r = exactlin.rank_rows(rows)
        if r > cur:
            kept.append(idx)
            cur = r
    return cur, kept


# -- components of the zero fiber -------------------------------------------


def components(
    w: WeightMatrix, max_components: Optional[int] = None
) -> ComponentSet:
    """Irreducible components of the zero fiber.

    The component index sets are exactly the supersets of I_d, so there are
    2^#I_f of them; the full list is enumerated unless ``max_components``
    caps it (the count is always reported).
    """
    i_d, i_f = split_indices(w)
    count = 1 << len(i_f)
    fiber_dim = 2 * w.n - _rank_subset(w, _full_mask(w.n))
    irreducible = not i_f
    comps: Optional[tuple[Stratum, ...]] = None
    if max_components is None or count <= max_components:
        free = sorted(i_f)
        out = []
        for pick in range(count):
            extra = {free[b] for b in range(len(free)) if pick >> b & 1}
            out.append(frozenset(i_d | extra))
        comps = tuple(sorted(out, key=lambda s: (len(s), sorted(s))))
    return ComponentSet(
        components=comps,
        count=count,
        fiber_dimension=fiber_dim,
        irreducible=irreducible,
        normal=irreducible,
    )


def reduction_support(w: WeightMatrix) -> Stratum:
    """I_d: the symplectic reduction only sees these coordinate lines."""
    return split_indices(w)[0]


# -- element classification --------------------------------------------------


def classify_stratum(w: WeightMatrix, subset: Iterable[int]) -> Classification:
    """Orbit geometry along a nonempty stratum, with dual certificates.

    Nilpotent iff 0 is outside the hull of the stratum's weights;
    semisimple iff 0 is in the relative interior; mixed otherwise.
    """
    idx = sorted(set(subset))
    if not idx:
        raise InputError("classify_stratum needs a nonempty support")
    q = HullQuery.of(weights_of(w, idx))
    hull = polytope.zero_in_hull(q)
    if isinstance(hull, Outside):
        return Nilpotent(hull)
    interior = polytope.zero_in_relative_interior(q)
    if isinstance(interior, Inside):
        return Semisimple(interior)
    return Mixed(hull=hull, interior=interior)


def classify_element(w: WeightMatrix, v: Sequence) -> Classification:
    """Classification of an element of V by its support stratum."""
    if len(v) != w.n:
        raise InputError(f"vector length does not match n={w.n}")
    supp = support(v)
    if not supp:
        return ZeroOrbit()
    return classify_stratum(w, supp)


def is_semisimple_point(w: WeightMatrix, v: Sequence) -> bool:
    c = classify_element(w, v)
    return isinstance(c, (Semisimple, ZeroOrbit))


def is_stable(w: WeightMatrix) -> tuple[bool, polytope.HullCertificate]:
    """Stability: 0 in the relative interior of the hull of all weights."""
    cert = polytope.zero_in_relative_interior(
        HullQuery.of(list(w.matrix.entries))
    )
    return isinstance(cert, Inside), cert


# -- visibility ---------------------------------------------------------------


def visible_decomposition(
    w: WeightMatrix,
) -> Union[VisibleDecomposition, NotVisible]:
    """Partition {1..n} = I_0 + I_1 + ... certifying visibility, or a reason.

    Candidate construction: indices of I_d are equivalent when they cut the
    same hyperplane out of the relation space Ker(tS); equivalence classes
    are the candidate blocks.  The construction is only guaranteed on
    visible input, so the three partition conditions are then verified
    directly and are the sole source of truth.
    """
    i_d, i_f = split_indices(w)
    tS = exactlin.transpose(w.matrix)
    relation_basis = exactlin.kernel_basis(tS)
    d = len(relation_basis)

    # Coordinate functional of index i restricted to the relation space.
    def functional(i: int) -> tuple[Fraction, ...]:
        return tuple(v[i - 1] for v in relation_basis)

    def normalized(c: Sequence[Fraction]) -> tuple[Fraction, ...]:
        lead = next((x for x in c if x != 0), None)
        assert lead is not None
        return tuple(x / lead for x in c)

    classes: dict[tuple[Fraction, ...], list[int]] = {}
    for i in sorted(i_d):
        classes.setdefault(normalized(functional(i)), []).append(i)

    blocks: list[Block] = []
    for members in classes.values():
        block_set = frozenset(members)
        sub = exactlin.row_select(w.matrix, members)
        ker = exactlin.kernel_basis(exactlin.transpose(sub))
        if len(ker) != 1:
            return NotVisible(
                f"block candidate {sorted(block_set)} carries "
                f"{len(ker)} independent relations instead of 1"
            )
        rel = ker[0]
        if any(c == 0 for c in rel):
            return NotVisible(
                f"relation on block candidate {sorted(block_set)} "
                "does not involve every index"
            )
        if rel[0] < 0:
            rel = tuple(-c for c in rel)
        if any(c < 0 for c in rel):
            return NotVisible(
                f"relation on block candidate {sorted(block_set)} has "
                "mixed signs, so 0 is not interior to its hull"
            )
        blocks.append(Block(indices=block_set, relation=rel))
    blocks.sort(key=lambda b: min(b.indices))

    # Direct verification of the three partition conditions.
    rank_total = _rank_subset(w, _full_mask(w.n))
    rank_fixed = _rank_subset(w, _mask_of(w, i_f))
    if rank_fixed != len(i_f):
        return NotVisible("free part I_0 is not linearly independent")
    rank_sum = rank_fixed
    for b in blocks:
        rank_b = _rank_subset(w, _mask_of(w, b.indices))
        if rank_b != len(b.indices) - 1:
            return NotVisible(
                f"block {sorted(b.indices)} has rank {rank_b}, "
                f"expected {len(b.indices) - 1}"
            )
        rank_sum += rank_b
    if rank_sum != rank_total:
        return NotVisible("block spans do not meet the total span in direct sum")
    return VisibleDecomposition(fixed=i_f, blocks=tuple(blocks))


def is_visible(w: WeightMatrix) -> bool:
    return isinstance(visible_decomposition(w), VisibleDecomposition)


def cartan_subspace(w: WeightMatrix) -> list[tuple[int, ...]]:
    """Indicator vectors of the positive blocks; they span a Cartan
    subspace, one vector per block, n - rank(S) in total."""
    dec = visible_decomposition(w)
    if isinstance(dec, NotVisible):
        raise NotVisibleError(
            f"weight matrix is not visible: {dec.reason}"
        )
    out = []
    for b in dec.blocks:
        out.append(tuple(1 if i in b.indices else 0 for i in range(1, w.n + 1)))
    return out


# -- orbit closure for fiber points ------------------------------------------


def _solve_cocharacter(
    w: WeightMatrix, pairings: Sequence[Fraction]
) -> tuple[int, ...]:
    """Integer cocharacter with prescribed weight pairings, positively
    scaled; requires consistency of S t = pairings."""
    sol = exactlin.solve(w.matrix, pairings)
    if sol is None:
        raise ArithmeticError("inconsistent cocharacter system")
    check = [
        sum((Fraction(w.matrix.entries[i][j]) * sol[j] for j in range(w.r)),
            Fraction(0))
        for i in range(w.n)
    ]
    if list(check) != [Fraction(p) for p in pairings]:
        raise ArithmeticError("cocharacter solve failed verification")
    return exactlin.clear_denominators(sol)


def _limit_point(w: WeightMatrix, p: PairPoint, lam: Sequence[int]) -> PairPoint:
    """Limit of the cocharacter flow at t -> 0 (exponents must allow it)."""
    exps = [
        sum(w.matrix.entries[i][j] * lam[j] for j in range(w.r))
        for i in range(w.n)
    ]
    x = tuple(
        p.x[i] if exps[i] == 0 else Fraction(0) for i in range(w.n)
    )
    phi = tuple(
        p.phi[i] if exps[i] == 0 else Fraction(0) for i in range(w.n)
    )
    return PairPoint(x, phi)


def _verify_destabilizer(
    w: WeightMatrix, p: PairPoint, lam: Sequence[int]
) -> None:
    exps = [
        sum(w.matrix.entries[i][j] * lam[j] for j in range(w.r))
        for i in range(w.n)
    ]
    strict = False
    for i in range(w.n):
        if p.x[i] != 0:
            if exps[i] < 0:
                raise ArithmeticError("destabilizer diverges on x")
            strict = strict or exps[i] > 0
        if p.phi[i] != 0:
            if exps[i] > 0:
                raise ArithmeticError("destabilizer diverges on phi")
            strict = strict or exps[i] < 0
    if not strict:
        raise ArithmeticError("destabilizer fixes the point")


def _free_index_destabilizer(
    w: WeightMatrix, p: PairPoint, i0: int, on_x: bool
) -> NotClosed:
    """Cocharacter pairing 1 with weight i0 (i0 in I_f) and 0 elsewhere.

    For i0 in supp(x) the dual coordinate phi_i0 is forced to vanish on the
    fiber, so the flow converges and kills x_i0; symmetrically for phi.
    """
    target = [Fraction(0)] * w.n
    target[i0 - 1] = Fraction(1) if on_x else Fraction(-1)
    lam = _solve_cocharacter(w, target)
    _verify_destabilizer(w, p, lam)
    return NotClosed(cocharacter=lam, limit=_limit_point(w, p, lam))


def _block_destabilizer(
    w: WeightMatrix,
    dec: VisibleDecomposition,
    p: PairPoint,
    supp_mask_set: Stratum,
    i0: int,
    on_x: bool,
) -> NotClosed:
    """Destabilizer from the block relation through i0 (visible case)."""
    block = next(b for b in dec.blocks if i0 in b.indices)
    outside = sorted(block.indices - supp_mask_set)
    assert outside, "restricted free index inside a fully contained block"
    i1 = outside[0]
    members = sorted(block.indices)
    alpha = dict(zip(members, block.relation))
    target = [Fraction(0)] * w.n
    sign = Fraction(1) if on_x else Fraction(-1)
    target[i0 - 1] = sign * alpha[i1]
    target[i1 - 1] = -sign * alpha[i0]
    lam = _solve_cocharacter(w, target)
    _verify_destabilizer(w, p, lam)
    return NotClosed(cocharacter=lam, limit=_limit_point(w, p, lam))


def _restricted_free_part(w: WeightMatrix, supp: Stratum) -> Stratum:
    """I_f of the row-selected matrix, mapped back to global indices."""
    members = sorted(supp)
    if not members:
        return frozenset()
    mask = _mask_of(w, members)
    total = _rank_subset(w, mask)
    out = set()
    for i in members:
        if _rank_subset(w, mask ^ (1 << (i - 1))) == total - 1:
            out.add(i)
    return frozenset(out)


def pair_closed_orbit(w: WeightMatrix, p: PairPoint) -> Closedness:
    """Is the orbit of a fiber point closed?

    Both parts semisimple always implies closed.  On visible input the
    converse holds and a destabilizing cocharacter is produced otherwise.
    On non-visible input the destabilizer is still available whenever a
    support meets I_f; the remaining situations are reported Unknown.
    """
    if any(v != 0 for v in moment_eval(w, p)):
        raise InputError("point is not in the zero fiber")

    supp_x = support(p.x)
    supp_phi = support(p.phi)

    def interior_cert(indices: Stratum, negate: bool) -> Optional[Inside]:
        if not indices:
            return None
        pts = [
            tuple(-v for v in w.weight(i)) if negate else w.weight(i)
            for i in sorted(indices)
        ]
        cert = polytope.zero_in_relative_interior(HullQuery.of(pts))
        return cert if isinstance(cert, Inside) else None

    x_cert = interior_cert(supp_x, negate=False)
    phi_cert = interior_cert(supp_phi, negate=True)
    x_ss = not supp_x or x_cert is not None
    phi_ss = not supp_phi or phi_cert is not None
    if x_ss and phi_ss:
        return Closed(x_combination=x_cert, phi_combination=phi_cert)

    _, i_f = split_indices(w)
    free_x = sorted(supp_x & i_f)
    if free_x:
        return _free_index_destabilizer(w, p, free_x[0], on_x=True)
    free_phi = sorted(supp_phi & i_f)
    if free_phi:
        return _free_index_destabilizer(w, p, free_phi[0], on_x=False)

    dec = visible_decomposition(w)
    if isinstance(dec, NotVisible):
        return UnknownClosedness(
            "non-visible action and neither support meets I_f; "
            "no general decision procedure is available"
        )
    if not x_ss:
        free = sorted(_restricted_free_part(w, supp_x))
        return _block_destabilizer(w, dec, p, supp_x, free[0], on_x=True)
    free = sorted(_restricted_free_part(w, supp_phi))
    return _block_destabilizer(w, dec, p, supp_phi, free[0], on_x=False)


def nonvisible_closed_witness(
    w: WeightMatrix,
) -> Optional[ClosedPairWitness]:
    """On non-visible input: a closed-orbit fiber point with nilpotent x.

    Built from a mixed-sign circuit of the weights: x is supported on the
    positive part of its relation, phi on the negative part.  Returns None
    when the action is visible.
    """
    if isinstance(visible_decomposition(w), VisibleDecomposition):
        return None
    i_d, _ = split_indices(w)
    members = sorted(i_d)
    if len(members) > _WITNESS_SCAN_LIMIT:
        raise CapabilityError(
            f"circuit scan over {len(members)} dependent indices exceeds "
            f"the {_WITNESS_SCAN_LIMIT}-index cap"
        )
    for size in range(1, len(members) + 1):
        for combo_mask in _masks_of_size(len(members), size):
            subset = [members[b] for b in range(len(members)) if combo_mask >> b & 1]
            mask = _mask_of(w, subset)
            if _rank_subset(w, mask) != size - 1:
                continue
            if any(
                _rank_subset(w, mask ^ (1 << (i - 1))) != size - 1
                for i in subset
            ):
                continue  # a proper subset is already dependent
            sub = exactlin.row_select(w.matrix, subset)
            ker = exactlin.kernel_basis(exactlin.transpose(sub))
            assert len(ker) == 1 and all(c != 0 for c in ker[0])
            rel = exactlin.clear_denominators(ker[0])
            if all(c > 0 for c in rel) or all(c < 0 for c in rel):
                continue  # same-sign circuit: not a nilpotent stratum
            if sum(1 for c in rel if c > 0) == 0:
                rel = tuple(-c for c in rel)
            full_rel = [0] * w.n
            for i, c in zip(subset, rel):
                full_rel[i - 1] = c
            x = tuple(
                Fraction(1) if c > 0 else Fraction(0) for c in full_rel
            )
            phi = tuple(
                Fraction(1) if c < 0 else Fraction(0) for c in full_rel
            )
            witness = ClosedPairWitness(
                pair=PairPoint(x, phi), relation=tuple(full_rel)
            )
            _verify_nonvisible_witness(w, witness)
            return witness
    raise ArithmeticError(
        "non-visible weight matrix without a mixed-sign circuit"
    )  # pragma: no cover - contradicts the visibility characterization


def _masks_of_size(n: int, size: int):
    """Bitmasks of {0..n-1} with ``size`` bits, in increasing numeric order."""
    if size == 0:
        yield 0
        return
    mask = (1 << size) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = ripple | (((mask ^ ripple) >> 2) // low)


def _verify_nonvisible_witness(
    w: WeightMatrix, witness: ClosedPairWitness
) -> None:
    p = witness.pair
    if any(v != 0 for v in moment_eval(w, p)):
        raise ArithmeticError("witness pair leaves the zero fiber")
    combo = [Fraction(0)] * w.r
    for i, c in enumerate(witness.relation):
        for j in range(w.r):
            combo[j] += c * w.matrix.entries[i][j]
    if any(v != 0 for v in combo):
        raise ArithmeticError("witness relation is not a weight dependency")
    if not isinstance(classify_element(w, p.x), Nilpotent):
        raise ArithmeticError("witness x-part is not nilpotent")
    if not isinstance(pair_semisimple_certificate(w, p), Inside):
        raise ArithmeticError("witness orbit failed the closedness check")


def pair_semisimple_certificate(
    w: WeightMatrix, p: PairPoint
) -> polytope.HullCertificate:
    """Hull certificate for the doubled weight system of a pair point.

    The pair's orbit is closed iff 0 lies in the relative interior of the
    hull of {s_i : x_i != 0} together with {-s_i : phi_i != 0}; this is
    the element classification applied to (x, phi) inside V + V*.
    """
    pts: list[tuple[int, ...]] = []
    for i in sorted(support(p.x)):
        pts.append(w.weight(i))
    for i in sorted(support(p.phi)):
        pts.append(tuple(-v for v in w.weight(i)))
    if not pts:
        return Inside(())  # the origin: trivially closed
    return polytope.zero_in_relative_interior(HullQuery.of(pts))


# -- smooth points and tangent data ------------------------------------------


def smooth_witness(w: WeightMatrix, subset: Iterable[int]) -> PairPoint:
    """A fiber point over the stratum of ``subset`` with trivial
    infinitesimal stabilizer: x the indicator of the subset, phi the
    indicator of its complement.  Requires a locally free action."""
    if not is_locally_free(w):
        raise CapabilityError(
            f"rank(S)={_rank_subset(w, _full_mask(w.n))} < r={w.r}: the"
            " action has a positive-dimensional kernel; reduce it first"
            " (reduce_to_effective)"
        )
    chosen = _set_of(_mask_of(w, subset))
    x = tuple(Fraction(1 if i in chosen else 0) for i in range(1, w.n + 1))
    phi = tuple(Fraction(0 if i in chosen else 1) for i in range(1, w.n + 1))
    return PairPoint(x, phi)


def stabilizer_dim(w: WeightMatrix, p: PairPoint) -> int:
    """Dimension of the joint infinitesimal stabilizer of (x, phi):
    r - rank of the weights on supp(x) | supp(phi)."""
    if len(p.x) != w.n or len(p.phi) != w.n:
        raise InputError(f"pair point length does not match n={w.n}")
    supp = support(p.x) | support(p.phi)
    return w.r - _rank_subset(w, _mask_of(w, supp))
