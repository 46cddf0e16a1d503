from math import factorial
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import hyp2f1

from matrix_gamma.algebra.gammafn import pochhammer
from matrix_gamma.algebra.gammaseries import (EvalPoint, batyrev_series_check, build_series, deformation_check,
                                              detect_shape, evaluate, evaluate_exact, exponential_series_check,
                                              f21_jbl, f21cal, fpq_cal, gauss_reduction_check,
                                              hypergeometric_terms, shift_invariance_check, system_residual,
                                              terminating_series_check, terms_table)
from matrix_gamma.algebra.groupmodel import exponential_data, toric_data
from matrix_gamma.constant import BACKEND_DIAGONAL_PAIR, BACKEND_GL2_TRIPLE, BACKEND_TORIC
from matrix_gamma.exception import DomainError, PoleError, UnsupportedCaseError


def classical_2f1(a, b, c, x, truncation):
    a, b, c, x = (Fraction(v) for v in (a, b, c, x))
    return sum(pochhammer(a, k) * pochhammer(b, k) / (pochhammer(c, k) * Fraction(factorial(k)))
               * x ** k for k in range(truncation + 1))


def test_shape_detection(gauss_pair, gauss_pair_scalar, appell_pair, toric_line):
    shape = detect_shape(*gauss_pair)
    assert shape.backend == BACKEND_DIAGONAL_PAIR
    assert shape.block_reps == (2, 3)
    assert shape.char_reps == (0, 1)
    assert detect_shape(*appell_pair).backend == BACKEND_GL2_TRIPLE
    assert detect_shape(*toric_line).backend == BACKEND_TORIC
    assert detect_shape(*gauss_pair_scalar).backend == BACKEND_TORIC


def test_unsupported_shape_is_reported():
    with pytest.raises(UnsupportedCaseError):
        detect_shape(*exponential_data(2))


def test_exponent_count_must_match(toric_line):
    with pytest.raises(DomainError):
        build_series(*toric_line, [0, 0], truncation=2)


def test_series_terms_are_exact_for_rational_s(toric_line):
    series = build_series(*toric_line, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], truncation=4)
    assert series.exact
    assert series.terms
    assert all(term.exact for term in series.terms)
    assert all(term.degree <= 4 for term in series.terms)
    record = series.to_record()
    assert record["term_count"] == len(series.terms)
    assert record["backend"] == BACKEND_TORIC


def test_terms_table_columns(toric_line):
    series = build_series(*toric_line, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], truncation=3)
    table = terms_table(series)
    assert len(table) == len(series.terms)
    assert {"alphas", "degree", "num", "den", "coefficient_real"} <= set(table.columns)


def test_backends_agree_on_the_scalar_gauss_data(gauss_pair_scalar):
    s = [Fraction(1, 3), Fraction(2, 5), Fraction(0), Fraction(-1, 4)]
    point = EvalPoint.of([1.0, 1.0, 0.2, 1.0])
    toric = build_series(*gauss_pair_scalar, s, truncation=8)
    paired = build_series(*gauss_pair_scalar, s, BACKEND_DIAGONAL_PAIR, truncation=8)
    assert evaluate(toric, point) == pytest.approx(evaluate(paired, point))


def test_shift_by_a_lattice_vector_changes_nothing(toric_line):
    series = build_series(*toric_line, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], truncation=4)
    assert shift_invariance_check(series, [1, -2, 1]).passed


def test_shift_off_the_lattice_is_detected(toric_line):
    series = build_series(*toric_line, [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)], truncation=4)
    report = shift_invariance_check(series, [1, 0, 0])
    assert not report.passed
    assert "witness" in report.details


def test_f21cal_for_n_1_is_the_classical_series():
    for x in (Fraction(1, 3), Fraction(-2, 5)):
        value = f21cal(Fraction(1, 2), Fraction(2, 3), Fraction(7, 4), x, 10)
        assert value == classical_2f1(Fraction(1, 2), Fraction(2, 3), Fraction(7, 4), x, 10)
        assert f21_jbl(Fraction(1, 2), Fraction(2, 3), Fraction(7, 4), x, 10) == value


def test_f21cal_float_against_scipy():
    assert f21cal(Fraction(1, 2), Fraction(2, 3), Fraction(7, 4), 0.3, 30) \
        == pytest.approx(hyp2f1(0.5, 2 / 3, 1.75, 0.3), rel=1e-12)


def test_f21cal_on_eigenvalues_matches_the_diagonal_matrix():
    eigenvalues = [Fraction(1, 5), Fraction(1, 3)]
    diagonal = [[Fraction(1, 5), Fraction(0)], [Fraction(0), Fraction(1, 3)]]
    left = f21cal(Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), eigenvalues, 5)
    right = f21cal(Fraction(1, 2), Fraction(3, 2), Fraction(5, 2), diagonal, 5)
    assert left == right


def test_fpq_cal_3f2_for_n_1():
    x = Fraction(1, 4)
    expected = sum(pochhammer(Fraction(1, 2), k) * pochhammer(Fraction(1, 3), k) * pochhammer(Fraction(2), k)
                   / (pochhammer(Fraction(3, 2), k) * pochhammer(Fraction(5, 3), k) * factorial(k))
                   * x ** k for k in range(8))
    assert fpq_cal([Fraction(1, 2), Fraction(1, 3), 2], [Fraction(3, 2), Fraction(5, 3)], x, 7) == expected


def test_fpq_cal_parameter_count():
    with pytest.raises(DomainError):
        fpq_cal([1, 2], [1, 2], Fraction(1, 2), 3)


def test_lower_parameter_pole_lists_offending_indices():
    with pytest.raises(PoleError) as info:
        hypergeometric_terms([1], [], [-1], [], 1, 3)
    assert info.value.offending == [[2], [3]]


def test_gauss_reduction_for_n_1():
    report = gauss_reduction_check(Fraction(1, 3), Fraction(2, 5), Fraction(-1, 4), 1, 6)
    assert report.passed, report.details


def test_terminating_series_in_degree_two(toric_line):
    report = terminating_series_check(*toric_line, [0, 2, 0])
    assert report.passed, report.details
    assert report.details["tau"] == 2
    assert report.details["constant"] == "1/2"


def test_terminating_series_in_degree_one(toric_line):
    assert terminating_series_check(*toric_line, [1, 0, 0]).passed


def test_terminating_series_vanishes_for_negative_tau(toric_line):
    report = terminating_series_check(*toric_line, [0, -1, 0])
    assert report.passed
    assert report.details["identically_zero"]


def test_terminating_gauss_series(gauss_pair):
    report = terminating_series_check(*gauss_pair, [2, 0, 0, 0])
    assert report.passed, report.details
    assert report.details["expected_constant"] == "1/2"


def test_terminating_series_rejects_fractional_s(toric_line):
    with pytest.raises(DomainError):
        terminating_series_check(*toric_line, [Fraction(1, 2), 0, 0])


def test_exact_evaluation_needs_integral_s(toric_line):
    series = build_series(*toric_line, [Fraction(1, 2), 0, 0], truncation=2)
    with pytest.raises(DomainError):
        evaluate_exact(series, EvalPoint.of([1, 1, 1]))


def test_deformed_series_matches_the_derivative(toric_line):
    report = deformation_check(*toric_line, [0, -1, 0], 4)
    assert report.passed, report.details
    assert report.details["terms_compared"] > 0


@pytest.mark.parametrize("points", [[(0,), (1,)], [(0,), (1,), (2,)]])
def test_batyrev_series_integrates_the_inverse(points):
    a = (1.0, 0.25) if len(points) == 2 else (1.0, 0.2, 0.1)
    report = batyrev_series_check(*toric_data(points), a, 10)
    assert report.passed, report.details


def test_batyrev_reports_a_non_dominant_constant():
    report = batyrev_series_check(*toric_data([(0,), (1,)]), (1.0, 2.0), 10)
    assert not report.passed
    assert "diagnostic" in report.details


def test_batyrev_needs_zero_as_a_vertex():
    with pytest.raises(DomainError):
        batyrev_series_check(*toric_data([(-1,), (0,), (1,)]), (1.0, 0.1, 0.1), 6, zero_index=1)


def test_gauss_series_solves_the_system(gauss_pair_scalar):
    series = build_series(*gauss_pair_scalar, [0.3, 0.7, 0.0, 0.4], BACKEND_DIAGONAL_PAIR, 12)
    report = system_residual(series, EvalPoint.of([1.0, 1.0, 0.2, 1.0]))
    assert report.passed, report.details
    assert report.details["pde_residual"] < 1e-6


def test_low_truncation_does_not_solve_the_system(gauss_pair_scalar):
    series = build_series(*gauss_pair_scalar, [0.3, 0.7, 0.0, 0.4], BACKEND_DIAGONAL_PAIR, 1)
    report = system_residual(series, EvalPoint.of([1.0, 1.0, 0.2, 1.0]), step=2e-4)
    assert not report.passed
    assert not report.details["diverging"]
    assert report.details["pde_residual"] > report.details["tolerance"]


def test_matrix_residual_shrinks_with_truncation(gauss_pair):
    point = EvalPoint.of([1.0, 1.0, np.array([[0.2, 0.05], [0.0, 0.15]]), np.eye(2)])
    residuals = [system_residual(build_series(*gauss_pair, [0.3, 0.7, 0.0, 0.4], BACKEND_DIAGONAL_PAIR, truncation),
                                 point).details["pde_residual"] for truncation in (4, 8)]
    assert residuals[1] < residuals[0]


def test_system_residual_needs_the_gauss_data(toric_line):
    series = build_series(*toric_line, [0.5, 0.5, 0.5], truncation=3)
    with pytest.raises(UnsupportedCaseError):
        system_residual(series, EvalPoint.of([1.0, 1.0, 1.0]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exponential_series(n):
    assert exponential_series_check(n, 8).passed
