from fractions import Fraction

import pytest

from matrix_gamma.algebra.groupmodel import (GroupSpec, RepSpec, check_homogeneity, chi_of, coroot_data,
                                             exponential_data, gauss_data_inhomogeneous, homogenize,
                                             invariant_term_dim, monoidal_closure_truncated, solve_L_chi,
                                             validate, weights_of, weyl_group)
from matrix_gamma.algebra.weights import DominantWeight
from matrix_gamma.exception import DomainError

W = DominantWeight.of


def test_gauss_pair_is_homogeneous(gauss_pair):
    group, reps = gauss_pair
    assert check_homogeneity(group, reps)


def test_homogenize_adds_a_torus_coordinate():
    group, reps = gauss_data_inhomogeneous(2)
    assert not check_homogeneity(group, reps)
    new_group, new_reps = homogenize(group, reps)
    assert new_group.torus_rank == group.torus_rank + 1
    assert all(rep.torus_char[0] == 1 for rep in new_reps)
    assert check_homogeneity(new_group, new_reps)


def test_homogenize_leaves_homogeneous_pairs_alone(gauss_pair):
    group, reps = gauss_pair
    assert homogenize(group, reps) == (group, list(reps))


def test_weights_of_a_twisted_block_rep():
    group = GroupSpec(1, (2,))
    assert weights_of(group, RepSpec((3,), 0, 1)) == [(3, 2, 1), (3, 1, 2)]


def test_invariant_term_dim_on_gauss_data(gauss_pair):
    group, reps = gauss_pair
    # N^2 exponent 1, N L exponent -1, C gets (0,-1), D gets (1,0)
    alphas = (W(1), W(-1), W(0, -1), W(1, 0))
    assert invariant_term_dim(group, reps, alphas) == 1
    assert invariant_term_dim(group, reps, (W(0), W(0), W(1, 0), W(1, 0))) == 0


def test_solve_L_chi_on_gauss_data(gauss_pair):
    group, reps = gauss_pair
    s = [Fraction(1, 2), Fraction(1, 3), Fraction(0), Fraction(-1)]
    chi = chi_of(group, reps, s)
    space = solve_L_chi(group, reps, chi)
    assert space.particular is not None
    assert chi_of(group, reps, space.particular) == chi
    assert len(space.basis) == 1


def test_coroots_and_weyl_group(standard_gl3):
    group, _ = standard_gl3
    roots = coroot_data(group)
    assert len(roots.positive_coroots) == 3
    assert roots.exponents == [1, 2, 3]
    assert len(weyl_group(group)) == 6
    assert len(weyl_group(GroupSpec(1, (2, 2)))) == 4


def test_monoidal_closure_of_the_standard_rep():
    group, reps = exponential_data(2)
    closure = monoidal_closure_truncated(group, reps, 2)
    assert closure[2] == {((), (W(2, 0),)), ((), (W(1, 1),))}


def test_validate_reports_bad_characters():
    with pytest.raises(DomainError):
        validate(GroupSpec(2, ()), [RepSpec((1,))])
    with pytest.raises(DomainError):
        validate(GroupSpec(0, (2,)), [RepSpec((), 1)])
