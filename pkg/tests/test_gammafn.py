import math
from fractions import Fraction

import pytest

from matrix_gamma.algebra.gammafn import (POLE, GammaValue, c_n, divided_power_coeff, exponential_series, gamma,
                                          gamma_n, gamma_n_float, matrix_pochhammer, pochhammer,
                                          reciprocal_gamma_n, reciprocal_gamma_n_float)
from matrix_gamma.algebra.symfunc import apply_D, symmetric_group_dim
from matrix_gamma.algebra.weights import DominantWeight, bounded_weights, dimension, nonnegative_weights
from matrix_gamma.exception import DomainError

W = DominantWeight.of


def test_gamma_n_at_integer_points():
    assert gamma_n([1, 1]) == GammaValue(Fraction(1))
    assert gamma_n([3, 1]) == GammaValue(Fraction(6))
    assert gamma_n([1, 0]) is POLE


def test_reciprocal_sends_poles_to_zero():
    assert reciprocal_gamma_n([1, 0]).is_zero
    assert reciprocal_gamma_n([2, 2]).as_fraction() == Fraction(1, 2)


def test_half_integer_gammas_share_one_transcendental():
    ratio = gamma(Fraction(5, 2)) / gamma(Fraction(1, 2))
    assert ratio.is_rational
    assert ratio.as_fraction() == Fraction(3, 4)
    assert gamma(Fraction(-1, 2)).rational_part == -2
    with pytest.raises(DomainError):
        gamma(Fraction(1, 3)).as_fraction()


def test_exact_and_float_paths_agree():
    value = gamma_n([Fraction(1, 3), Fraction(5, 2)])
    expected = math.gamma(1 / 3 + 1) * math.gamma(5 / 2)
    assert value.to_float() == pytest.approx(expected)
    assert gamma_n_float([1 / 3, 5 / 2]).real == pytest.approx(expected)


def test_float_reciprocal_vanishes_at_poles():
    assert reciprocal_gamma_n_float([1, 0]) == 0


def test_pochhammer_symbols():
    assert pochhammer(3, 2) == 12
    assert pochhammer(Fraction(-1), 2) == 0
    assert matrix_pochhammer(Fraction(1, 2), W(1, 0)) == Fraction(3, 2)
    assert matrix_pochhammer(2, W(2, 1), 2) == (3 * 4) * 2


def test_c_n():
    assert [c_n(n) for n in (1, 2, 3, 4)] == [1, 1, 2, 12]


def test_divided_power_vanishes_off_the_positive_cone():
    assert divided_power_coeff(W(0, -1)) == 0
    assert divided_power_coeff(W(2, 0)) == Fraction(1, 6)


def test_exponential_series_degree_two():
    series = exponential_series(2, 2)
    assert series.coefficient(W(2, 0)) == Fraction(1, 2)
    assert series.coefficient(W(1, 1)) == Fraction(1, 2)
    assert series.coefficient(W(1, 0)) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_symmetric_group_dimension_from_matrix_gamma(n):
    for total in range(0, 9):
        for alpha in nonnegative_weights(total, n):
            left = Fraction(symmetric_group_dim(alpha), math.factorial(total))
            assert left == c_n(n) * dimension(alpha) * divided_power_coeff(alpha)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("shift", [Fraction(0), Fraction(1, 2), Fraction(-1, 3)])
def test_gamma_n_ratio_law(n, shift):
    for alpha in bounded_weights(n, 6):
        vector = [Fraction(p) + shift for p in alpha.parts]
        before = gamma_n(vector)
        for i in range(n):
            raised = list(vector)
            raised[i] += 1
            after = gamma_n(raised)
            if before is POLE or after is POLE:
                continue
            assert (after / before).as_fraction() == vector[i] + n - 1 - i


@pytest.mark.parametrize("a", [Fraction(1, 2), Fraction(1, 3), Fraction(2), Fraction(5, 2)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_pochhammer_is_a_gamma_ratio(a, n):
    for total in range(0, 5):
        for mu in nonnegative_weights(total, n):
            numerator = gamma_n([p + a for p in mu.parts])
            denominator = gamma_n([a] * n)
            assert matrix_pochhammer(a, mu) == (numerator / denominator).as_fraction()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exponential_series_differentiates_to_itself(n):
    for degree in range(1, 6):
        assert apply_D(exponential_series(n, degree)) == exponential_series(n, degree - 1) * n
