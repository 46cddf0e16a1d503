from fractions import Fraction

import pytest
import sympy

from matrix_gamma.algebra.symfunc import (ClassFunction, apply_D, character_dimension, from_polynomial,
                                          invariant_dim, lr_coefficient, lr_multiply, power_trace_expand,
                                          schur_eval, schur_matrix_eval, schur_polynomial, symmetric_group_dim)
from matrix_gamma.algebra.weights import DominantWeight, bounded_weights, dimension, dual, nonnegative_weights
from matrix_gamma.exception import DomainError

W = DominantWeight.of


def test_schur_eval_small_cases():
    x = [Fraction(2), Fraction(3)]
    assert schur_eval(W(1, 0), x) == 5
    assert schur_eval(W(1, 1), x) == 6
    assert schur_eval(W(2, 0), x) == 19
    assert schur_eval(W(0, -1), x) == Fraction(5, 6)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_value_at_identity_is_dimension(n):
    for total in range(0, 5):
        for alpha in nonnegative_weights(total, n):
            assert schur_eval(alpha, [1] * n) == dimension(alpha)


def test_float_evaluation_agrees_with_exact():
    alpha = W(2, 1, 0)
    exact = schur_eval(alpha, [Fraction(1, 2), Fraction(2), Fraction(3)])
    assert schur_eval(alpha, [0.5, 2.0, 3.0]) == pytest.approx(float(exact))


def test_zero_eigenvalue_with_negative_weight():
    with pytest.raises(DomainError):
        schur_eval(W(0, -1), [0, 1])


def test_littlewood_richardson_products():
    square = lr_multiply(ClassFunction.schur(W(1, 0)), ClassFunction.schur(W(1, 0)))
    assert square == ClassFunction(2, {W(2, 0): 1, W(1, 1): 1})
    assert lr_coefficient(W(2, 1, 0), W(2, 1, 0), W(3, 2, 1)) == 2
    assert lr_coefficient(W(1, 0), W(0, -1), W(0, 0)) == 1


def test_product_dimension_is_multiplicative():
    f = ClassFunction.schur(W(2, 1, 0))
    g = ClassFunction.schur(W(1, 0, -1))
    assert character_dimension(f * g) == dimension(W(2, 1, 0)) * dimension(W(1, 0, -1))


def test_invariant_dim_of_dual_pair():
    assert invariant_dim([W(2, 0), W(0, -2)], 2) == 1
    assert invariant_dim([W(2, 0), W(0, -1)], 2) == 0


@pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (4, 2)])
def test_power_trace_expansion_matches_polynomial(m, n):
    x = sympy.symbols(f"x0:{n}")
    expected = from_polynomial(sum(x) ** m, x)
    assert power_trace_expand(m, n) == expected


def test_symmetric_group_dimensions():
    assert symmetric_group_dim(W(2, 1, 0)) == 2
    assert symmetric_group_dim(W(3, 0)) == 1
    assert symmetric_group_dim(W(2, 2, 0, 0)) == 2


@pytest.mark.parametrize("alpha", [W(1, 0), W(2, 1, 0), W(3, 1, 1), W(2, 0, -1)])
def test_apply_D_matches_differentiation(alpha):
    x = sympy.symbols(f"x0:{alpha.n}")
    polynomial = schur_polynomial(alpha, x)
    derivative = sum(sympy.diff(polynomial, symbol) for symbol in x)
    assert apply_D(ClassFunction.schur(alpha)) == from_polynomial(derivative, x)


def test_schur_of_matrix():
    matrix = [[1, 2], [3, 4]]
    assert schur_matrix_eval(W(1, 1), matrix) == -2
    assert schur_matrix_eval(W(2, 0), matrix) == 27
    assert schur_matrix_eval(W(0, -1), matrix) == Fraction(-5, 2)


def test_class_function_drops_zero_terms():
    f = ClassFunction.schur(W(1, 0)) - ClassFunction.schur(W(1, 0))
    assert f.is_zero()
    assert (ClassFunction.one(2) * 3).coefficient(W(0, 0)) == 3


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lr_multiply_is_commutative(n):
    weights = bounded_weights(n, 4)
    for alpha in weights:
        for beta in weights:
            f, g = ClassFunction.schur(alpha), ClassFunction.schur(beta)
            assert lr_multiply(f, g) == lr_multiply(g, f)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lr_multiply_is_associative(n):
    weights = bounded_weights(n, 2)
    for alpha in weights:
        for beta in weights:
            for gamma in weights:
                f = ClassFunction.schur(alpha)
                g = ClassFunction.schur(beta) + ClassFunction.schur(gamma) * Fraction(1, 3)
                h = ClassFunction.schur(gamma)
                assert lr_multiply(lr_multiply(f, g), h) == lr_multiply(f, lr_multiply(g, h))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_invariant_coefficient_selects_the_dual(n):
    weights = bounded_weights(n, 4)
    for alpha in weights:
        for beta in weights:
            product = lr_multiply(ClassFunction.schur(alpha), ClassFunction.schur(beta))
            expected = 1 if beta == dual(alpha) else 0
            assert product.coefficient(DominantWeight.zero(n)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_power_trace_expansion_evaluates_to_trace_power(n):
    x = [Fraction(k + 2, k + 1) for k in range(n)]
    for m in range(0, 9):
        assert power_trace_expand(m, n).evaluate(x) == sum(x) ** m


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_apply_D_sweep_over_small_weights(n):
    x = sympy.symbols(f"x0:{n}")
    for k in range(0, 5):
        for alpha in nonnegative_weights(k, n):
            polynomial = schur_polynomial(alpha, x)
            derivative = sum(sympy.diff(polynomial, symbol) for symbol in x)
            assert apply_D(ClassFunction.schur(alpha)) == from_polynomial(derivative, x)
