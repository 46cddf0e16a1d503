from fractions import Fraction

import pytest

from matrix_gamma.algebra.groupmodel import appell_data, exponential_data, gauss_data, toric_data


@pytest.fixture
def gauss_pair():
    """C* x C* x GL_2 with A = {N^2, N L, N V, L V}."""
    return gauss_data(2)


@pytest.fixture
def gauss_pair_scalar():
    return gauss_data(1)


@pytest.fixture
def appell_pair():
    return appell_data()


@pytest.fixture
def standard_gl3():
    return exponential_data(3)


@pytest.fixture
def toric_line():
    """Three collinear characters (1,0), (1,1), (1,2); the index lattice is spanned by (1,-2,1)."""
    return toric_data([(1, 0), (1, 1), (1, 2)])


@pytest.fixture
def rational_s():
    return Fraction(1, 3), Fraction(2, 5), Fraction(-1, 4)
