from fractions import Fraction
from itertools import product

import pytest

from matrix_gamma.algebra.weights import (DominantWeight, ShiftedWeight, bounded_weights, conjugate, det_shift,
                                          dimension, dual, enumerate_bounded, nonnegative_weights, pieri_down,
                                          pieri_up, ssyt_count, to_partition)
from matrix_gamma.exception import DomainError


def test_dimension_of_adjoint_shape():
    assert dimension(DominantWeight.of(2, 1, 0)) == 8


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_dimension_matches_tableau_count(n):
    for total in range(0, 6):
        for alpha in nonnegative_weights(total, n):
            assert dimension(alpha) == ssyt_count(alpha)


def test_dimension_is_invariant_under_det_shift_and_dual():
    alpha = DominantWeight.of(3, 1, -2)
    assert dimension(det_shift(alpha, 5)) == dimension(alpha)
    assert dimension(dual(alpha)) == dimension(alpha)


def test_increasing_parts_are_rejected():
    with pytest.raises(DomainError):
        DominantWeight.of(0, 1)


def test_dual_reverses_and_negates():
    assert dual(DominantWeight.of(2, 0, -1)) == DominantWeight.of(1, 0, -2)


def test_to_partition_returns_shift():
    shape, shift = to_partition(DominantWeight.of(1, -1, -3))
    assert shape == DominantWeight.of(4, 2, 0)
    assert shift == -3


def test_conjugate_partition():
    assert conjugate(DominantWeight.of(3, 1, 0)) == (2, 1, 1)
    assert conjugate(DominantWeight.zero(2)) == ()


def test_pieri_neighbours():
    assert pieri_up(DominantWeight.of(1, 0)) == {DominantWeight.of(2, 0), DominantWeight.of(1, 1)}
    assert pieri_down(DominantWeight.of(1, 1)) == {DominantWeight.of(1, 0)}


def test_shifted_weight_normal_form():
    shifted = ShiftedWeight(DominantWeight.of(1, 0), Fraction(5, 2))
    assert shifted.base == DominantWeight.of(3, 2)
    assert shifted.shift == Fraction(1, 2)
    assert shifted == ShiftedWeight(DominantWeight.of(2, 1), Fraction(3, 2))
    assert shifted.as_vector() == (Fraction(7, 2), Fraction(5, 2))


def test_bounded_weights_allow_negative_parts():
    assert [alpha.parts for alpha in bounded_weights(1, 2)] == [(2,), (1,), (0,), (-1,), (-2,)]
    assert set(bounded_weights(2, 1)) == {DominantWeight.of(1, 0), DominantWeight.of(0, 0),
                                          DominantWeight.of(0, -1)}


def test_enumerate_bounded_splits_degree_over_blocks():
    tuples = enumerate_bounded([1, 2], 1)
    assert set(tuples) == {(DominantWeight.of(1), DominantWeight.of(0, 0)),
                           (DominantWeight.of(0), DominantWeight.of(1, 0))}


def test_pieri_up_literal_cases():
    assert pieri_up(DominantWeight.of(2, 1)) == {DominantWeight.of(3, 1), DominantWeight.of(2, 2)}
    assert pieri_up(DominantWeight.zero(2)) == {DominantWeight.of(1, 0)}
    assert pieri_up(DominantWeight.of(1, 1, 0)) == {DominantWeight.of(2, 1, 0), DominantWeight.of(1, 1, 1)}
    assert pieri_down(DominantWeight.of(1, 0)) == {DominantWeight.of(0, 0), DominantWeight.of(1, -1)}
    assert pieri_down(DominantWeight.of(2, 2)) == {DominantWeight.of(2, 1)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pieri_up_and_down_are_adjoint(n):
    weights = bounded_weights(n, 4)
    for alpha in weights:
        for beta in pieri_up(alpha):
            assert alpha in pieri_down(beta)
        for beta in pieri_down(alpha):
            assert alpha in pieri_up(beta)
    for alpha in weights:
        for beta in weights:
            assert (beta in pieri_up(alpha)) == (alpha in pieri_down(beta))


def test_enumerate_bounded_order():
    assert enumerate_bounded([1], 2) == [(DominantWeight.of(2),)]
    assert enumerate_bounded([2], 2) == [(DominantWeight.of(2, 0),), (DominantWeight.of(1, 1),)]
    assert enumerate_bounded([1, 1], 1) == [(DominantWeight.of(1), DominantWeight.of(0)),
                                            (DominantWeight.of(0), DominantWeight.of(1))]
    assert enumerate_bounded([2, 1], -1) == []


@pytest.mark.parametrize("blocks", [(1,), (2,), (1, 2), (2, 2), (1, 1, 1)])
def test_enumerate_bounded_matches_direct_count(blocks):
    for total in range(0, 5):
        tuples = enumerate_bounded(blocks, total)
        assert len(tuples) == len(set(tuples))
        direct = 0
        for sizes in product(range(total + 1), repeat=len(blocks)):
            if sum(sizes) != total:
                continue
            count = 1
            for size, d in zip(sizes, blocks):
                count *= len(nonnegative_weights(size, d))
            direct += count
        assert len(tuples) == direct
        for alphas in tuples:
            assert all(alpha.is_nonnegative for alpha in alphas)
            assert sum(alpha.size for alpha in alphas) == total
