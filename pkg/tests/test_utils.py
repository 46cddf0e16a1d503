from fractions import Fraction
from itertools import combinations
from math import gcd

import pytest

from matrix_gamma.exception import DomainError
from matrix_gamma.utils import integer_kernel, lattice_basis_of_span, to_fraction


def _maximal_minor_gcd(vectors):
    size = len(vectors)
    result = 0
    for columns in combinations(range(len(vectors[0])), size):
        minor = [[vector[c] for c in columns] for vector in vectors]
        if size == 1:
            value = minor[0][0]
        elif size == 2:
            value = minor[0][0] * minor[1][1] - minor[0][1] * minor[1][0]
        else:
            raise AssertionError("only ranks 1 and 2 are used here")
        result = gcd(result, value)
    return result


def test_kernel_of_a_single_row():
    assert integer_kernel([[2, 4]], 2) in ([[-2, 1]], [[2, -1]])


@pytest.mark.parametrize("rows", [[[1, 2, 3]], [[2, 4, 6]], [[3, 0, 5]], [[1, 1, 0], [0, 2, 2]], [[0, 0, 0]]])
def test_kernel_is_a_saturated_basis(rows):
    kernel = integer_kernel(rows, 3)
    rank = len([row for row in rows if any(row)]) if len(rows) == 1 else 2
    assert len(kernel) == 3 - rank
    for vector in kernel:
        assert all(sum(a * b for a, b in zip(row, vector)) == 0 for row in rows)
    if 0 < len(kernel) < 3:
        assert _maximal_minor_gcd(kernel) == 1


def test_kernel_of_no_rows_is_everything():
    assert integer_kernel([], 2) == [[1, 0], [0, 1]]


def test_kernel_takes_rational_rows():
    kernel = integer_kernel([[Fraction(1, 2), Fraction(1, 3)]], 2)
    assert kernel in ([[-2, 3]], [[2, -3]])


def test_kernel_rejects_wrong_width():
    with pytest.raises(DomainError):
        integer_kernel([[1, 2, 3]], 2)


def test_lattice_basis_of_a_scaled_span():
    assert lattice_basis_of_span([[2, 2, 0]], 3) in ([[1, 1, 0]], [[-1, -1, 0]])
    basis = lattice_basis_of_span([[2, 0, 0], [0, 3, 3]], 3)
    assert len(basis) == 2
    assert _maximal_minor_gcd(basis) == 1


def test_to_fraction_rejects_floats():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction({"num": 1, "den": 4}) == Fraction(1, 4)
    with pytest.raises(TypeError):
        to_fraction(0.5)
