"""The brute-force oracle routes themselves: examples and reproducibility."""

from __future__ import annotations

from fractions import Fraction

import pytest

from moment_fiber import oracle, torus
from moment_fiber.errors import CapabilityError, InputError
from moment_fiber.torus import NotVisible, PairPoint, VisibleDecomposition, WeightMatrix


def wm(rows):
    return WeightMatrix.from_rows(rows)


class TestBruteComponents:
    def test_free_index(self):
        assert oracle.brute_components(wm([[1], [0]])) == [
            frozenset({2}),
            frozenset({1, 2}),
        ]

    def test_opposite_pair(self):
        assert oracle.brute_components(wm([[1], [-1]])) == [frozenset({1, 2})]

    def test_identity(self):
        got = oracle.brute_components(wm([[1, 0], [0, 1]]))
        assert got == [
            frozenset(),
            frozenset({1}),
            frozenset({2}),
            frozenset({1, 2}),
        ]

    def test_size_cap(self):
        with pytest.raises(CapabilityError):
            oracle.brute_components(wm([[1]] * 17))


class TestBruteVisible:
    def test_block_plus_free(self):
        got = oracle.brute_visible(wm([[1, 0], [-1, 0], [0, 1]]))
        assert isinstance(got, VisibleDecomposition)
        assert got.fixed == frozenset({3})
        assert [b.indices for b in got.blocks] == [frozenset({1, 2})]

    def test_triple_not_visible(self):
        assert isinstance(
            oracle.brute_visible(wm([[1], [1], [-2]])), NotVisible
        )

    def test_zero_weight_is_own_block(self):
        got = oracle.brute_visible(wm([[0]]))
        assert isinstance(got, VisibleDecomposition)
        assert got.fixed == frozenset()
        assert got.blocks[0].indices == frozenset({1})
        assert got.blocks[0].relation == (Fraction(1),)

    def test_size_cap(self):
        with pytest.raises(CapabilityError):
            oracle.brute_visible(wm([[1]] * 9))

    def test_check_decomposition_rejects_bad_relation(self):
        w = wm([[1], [-1]])
        dec = torus.visible_decomposition(w)
        assert oracle.check_decomposition(w, dec) is None
        tampered = VisibleDecomposition(
            fixed=dec.fixed,
            blocks=(
                torus.Block(
                    indices=dec.blocks[0].indices,
                    relation=(Fraction(1), Fraction(2)),
                ),
            ),
        )
        assert oracle.check_decomposition(w, tampered) is not None


class TestTangentDim:
    def test_smooth_point(self):
        w = wm([[1], [-1]])
        assert oracle.tangent_dim(w, PairPoint.of((1, 0), (0, 1))) == 3

    def test_origin(self):
        w = wm([[1], [-1]])
        assert oracle.tangent_dim(w, PairPoint.of((0, 0), (0, 0))) == 4

    def test_interior_smooth_point(self):
        w = wm([[1], [-1]])
        assert oracle.tangent_dim(w, PairPoint.of((1, 1), (1, 1))) == 3

    def test_off_fiber_rejected(self):
        with pytest.raises(InputError):
            oracle.tangent_dim(wm([[1], [0]]), PairPoint.of((1, 0), (1, 0)))


class TestRandomFiberPoint:
    def test_support_and_fiber(self):
        w = wm([[1], [-1]])
        p = oracle.random_fiber_point(w, {1, 2}, seed=7)
        assert all(v != 0 for v in p.x)
        assert torus.moment_eval(w, p) == (Fraction(0),)
        assert p.x[0] * p.phi[0] == p.x[1] * p.phi[1]

    def test_empty_support(self):
        w = wm([[1], [-1]])
        p = oracle.random_fiber_point(w, set(), seed=3)
        assert p.x == (Fraction(0), Fraction(0))

    def test_identity_forces_dual_zero(self):
        w = wm([[1, 0], [0, 1]])
        p = oracle.random_fiber_point(w, {1}, seed=11)
        assert p.phi[0] == 0

    def test_reproducible(self):
        w = wm([[2, 1], [1, 1], [-3, -2]])
        a = oracle.random_fiber_point(w, {1, 2, 3}, seed=42)
        b = oracle.random_fiber_point(w, {1, 2, 3}, seed=42)
        assert a == b
