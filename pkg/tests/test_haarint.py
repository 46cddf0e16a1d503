from fractions import Fraction

import numpy as np
import pytest

from matrix_gamma.algebra.haarint import (MatrixPolyExpr, coefficient_extract, contour_fourier, euler_oracle_61,
                                          haar_unitary, integrate_schur_pair, integrate_Un, monte_carlo_haar,
                                          toric_euler_oracle)
from matrix_gamma.algebra.symfunc import ClassFunction, schur_matrix_eval
from matrix_gamma.algebra.weights import DominantWeight, bounded_weights, dimension, dual
from matrix_gamma.constant import DEFAULT_SEED
from matrix_gamma.exception import UnsupportedCaseError

W = DominantWeight.of


def test_schur_pairing_selects_the_dual():
    result = integrate_schur_pair(W(1, 0), W(0, -1))
    assert result.nonzero
    assert result.scalar == Fraction(1, 2)
    assert not integrate_schur_pair(W(1, 0), W(1, 0)).nonzero


def test_two_argument_integral_for_n_1():
    expression = MatrixPolyExpr.monomial(1, (1, 1), -2)
    result = integrate_Un(expression)
    assert result.evaluate([[2]], [[3]]) == 6
    # det(y)^-1 breaks the degree condition m1 + m2 + n p = 0
    assert integrate_Un(MatrixPolyExpr.monomial(1, (1, 1), -1)).is_zero()


def test_single_argument_integral_is_the_determinant():
    result = integrate_Un(MatrixPolyExpr.monomial(2, (2,), -1))
    assert result.evaluate([[1, 2], [3, 4]]) == -2


def test_three_arguments_are_unsupported():
    with pytest.raises(UnsupportedCaseError):
        integrate_Un(MatrixPolyExpr.monomial(2, (1, 1, 1), -1))


def test_haar_samples_are_unitary():
    y = haar_unitary(3, np.random.default_rng(DEFAULT_SEED))
    assert np.allclose(y @ y.conj().T, np.eye(3))


def test_monte_carlo_is_reproducible():
    first = monte_carlo_haar(lambda y: abs(np.trace(y)) ** 2, 2, 2000, seed=7)
    second = monte_carlo_haar(lambda y: abs(np.trace(y)) ** 2, 2, 2000, seed=7)
    assert first.estimate == second.estimate


def test_orthogonality_against_monte_carlo():
    c = np.diag([1.0, 2.0])
    d = np.array([[2.0, 1.0], [0.0, 1.0]])
    d_inverse = np.linalg.inv(d)

    def integrand(y):
        return np.trace(c @ y) * np.trace(np.linalg.inv(y) @ d_inverse)

    estimate = monte_carlo_haar(integrand, 2, 100_000)
    exact = schur_matrix_eval(W(1, 0), c @ d_inverse) / 2
    assert abs(estimate.estimate - exact) <= 4 * estimate.stderr + 1e-12


def test_exact_integral_against_monte_carlo():
    c1 = np.array([[1.0, 0.5], [0.0, 1.0]])
    c2 = np.array([[1.0, 0.0], [0.5, 2.0]])

    def integrand(y):
        return np.trace(c1 @ y) * np.trace(c2 @ y) / np.linalg.det(y)

    estimate = monte_carlo_haar(integrand, 2, 100_000)
    exact = integrate_Un(MatrixPolyExpr.monomial(2, (1, 1), -1)).evaluate(c1, c2)
    assert abs(estimate.estimate - exact) <= 4 * estimate.stderr + 1e-12


def test_contour_fourier_and_coefficient_extraction_invert_each_other():
    f = ClassFunction.schur(W(-2, -3)) + ClassFunction.schur(W(-2, -2), 3)
    result = contour_fourier(f, 4)
    assert not result.incomplete
    assert result.function.coefficient(W(1, 0)) == Fraction(1, 2)
    assert coefficient_extract(result.function) == f


def test_contour_fourier_flags_truncation():
    result = contour_fourier(ClassFunction.schur(W(-4, -5)), 2)
    assert result.incomplete
    assert result.function.is_zero()


def test_toric_euler_oracle_constant_term():
    assert toric_euler_oracle([(1,), (-1,)], [2, 3], 2, [0]) == 12
    assert toric_euler_oracle([(1,), (-1,)], [2, 3], 1, [0]) == 0


def test_euler_oracle_for_n_1():
    # (a + b u + c y + u d y)^2 u^-1 y^-1: the surviving monomials are 2 a (u d y) and 2 (b u)(c y)
    value = euler_oracle_61(Fraction(2), Fraction(3), Fraction(5), Fraction(7), 2, -1, -1)
    assert value == 2 * 2 * 7 + 2 * 3 * 5


@pytest.mark.parametrize("n", [1, 2, 3])
def test_schur_pairing_sweep(n):
    weights = bounded_weights(n, 4)
    for alpha in weights:
        for beta in weights:
            result = integrate_schur_pair(alpha, beta)
            assert result.nonzero == (beta == dual(alpha))
            if result.nonzero:
                assert result.scalar == Fraction(1, dimension(alpha))
            else:
                assert result.scalar == 0
