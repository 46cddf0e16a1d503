from fractions import Fraction
from itertools import permutations

import pytest
import sympy

from matrix_gamma.algebra.groupmodel import GroupSpec, RepSpec, coroot_data, exponential_data, gauss_data, toric_data
from matrix_gamma.algebra.polytope import (LatticePolytope, cone_face_orbits, degree_report, face_orbits,
                                           integrate_polynomial, kazarnovskii_degree, lattice_volume,
                                           nonresonant_check, toric_cobase_check, triangulate, weight_polytope)
from matrix_gamma.exception import ResourceLimitError, UnsupportedCaseError


def test_unit_square_faces():
    square = LatticePolytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert square.dim == 2
    assert len(square.vertices) == 4
    assert len(square.facets) == 4
    # empty face, 4 vertices, 4 edges, the square
    assert square.face_count == 10


def test_interior_points_are_not_vertices():
    polytope = LatticePolytope.from_points([(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)])
    assert sorted(polytope.vertices) == [(0, 0), (0, 2), (2, 0)]


def test_lattice_volumes():
    triangle = LatticePolytope.from_points([(0, 0), (1, 0), (0, 1)])
    assert lattice_volume(triangle) == Fraction(1, 2)
    square = LatticePolytope.from_points([(0, 0), (2, 0), (0, 2), (2, 2)])
    assert lattice_volume(square) == 4
    assert len(triangulate(square)) == 2


def test_volume_of_a_lower_dimensional_polytope_uses_its_own_lattice():
    segment = LatticePolytope.from_points([(1, 0, 0), (0, 1, 0)])
    assert segment.dim == 1
    assert lattice_volume(segment) == 1


def test_integrate_linear_function_over_square():
    square = LatticePolytope.from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    x, y = sympy.symbols("x y")
    assert integrate_polynomial(square, x, (x, y)) == Fraction(1, 2)
    assert integrate_polynomial(square, x * y, (x, y)) == Fraction(1, 4)


@pytest.mark.parametrize("n", [1, 2])
def test_degree_of_gauss_compactification(n):
    group, reps = gauss_data(n)
    assert kazarnovskii_degree(weight_polytope(group, reps), coroot_data(group)) == n * n + 1


def test_toric_degree_is_normalised_volume():
    group, reps = toric_data([(0, 0), (1, 0), (0, 1), (1, 1)])
    report = degree_report(weight_polytope(group, reps), coroot_data(group))
    assert report["degree"] == {"num": "2", "den": "1"}
    assert report["lattice_volume"] == "1"


@pytest.mark.parametrize("n", [2, 3, 4])
def test_standard_rep_simplex_has_n_plus_one_orbits(n):
    group, reps = exponential_data(n)
    orbits = face_orbits(weight_polytope(group, reps), group)
    assert len(orbits) == n + 1
    assert [orbit.dim for orbit in orbits] == list(range(-1, n))


def test_cone_orbits_include_the_apex():
    group, reps = exponential_data(2)
    orbits = cone_face_orbits(group, reps)
    assert [orbit.dim for orbit in orbits] == [0, 1, 2]


def test_nonresonance_on_a_two_dimensional_cone():
    group, reps = toric_data([(1, 0), (1, 1)])
    assert nonresonant_check(group, reps, [Fraction(1, 2), Fraction(1, 3)]).nonresonant
    result = nonresonant_check(group, reps, [0, 0])
    assert not result.nonresonant
    assert result.witness is not None


def test_toric_cobase():
    group, reps = toric_data([(1, 0), (1, 1), (1, 2)])
    assert toric_cobase_check(group, reps, [1])
    assert not toric_cobase_check(group, reps, [])


def test_cobase_needs_toric_data(gauss_pair):
    with pytest.raises(UnsupportedCaseError):
        toric_cobase_check(*gauss_pair, [0])


def test_ambient_dimension_limit():
    group = GroupSpec(7, ())
    reps = [RepSpec(tuple(int(i == j) for j in range(7))) for i in range(7)]
    with pytest.raises(ResourceLimitError):
        weight_polytope(group, reps)


def test_gauss_degree_reports_the_main_component(gauss_pair):
    group, reps = gauss_pair
    report = degree_report(weight_polytope(group, reps), coroot_data(group))
    assert report["component"] == "main"
    assert report["degree"] == {"num": "5", "den": "1"}
    assert report["dim_X"] == 5


def test_nonresonance_on_a_segment():
    group, reps = toric_data([(0,), (1,)])
    assert nonresonant_check(group, reps, [Fraction(1, 2)]).nonresonant
    assert not nonresonant_check(group, reps, [0]).nonresonant
    assert not nonresonant_check(group, reps, [3]).nonresonant


def _toric_degree(points):
    group, reps = toric_data(points)
    return kazarnovskii_degree(weight_polytope(group, reps), coroot_data(group))


def test_degree_ignores_the_order_of_points():
    points = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1)]
    expected = _toric_degree(points)
    for order in list(permutations(range(len(points))))[::17]:
        assert _toric_degree([points[i] for i in order]) == expected


def test_degree_ignores_the_order_of_reps(gauss_pair):
    group, reps = gauss_pair
    assert kazarnovskii_degree(weight_polytope(group, reps[::-1]), coroot_data(group)) == 5


def test_degree_grows_with_the_point_set():
    points = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (0, 2), (2, 2)]
    degrees = [_toric_degree(points[:k]) for k in range(3, len(points) + 1)]
    assert degrees == sorted(degrees)
    assert degrees[0] == 1
    assert degrees == [1, 2, 3, 5, 7]
