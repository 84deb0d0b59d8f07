import math
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from chessmorse import homology
from chessmorse.bier import bier_sphere
from chessmorse.chessboard import GridSpec, MultiplicityProfile, multiple_chessboard, standard_chessboard
from chessmorse.complex_core import (
    SimplicialComplex,
    euler_characteristic,
    from_facets,
    full_simplex,
    random_complex,
    void_complex,
)
from chessmorse.homology import (
    BoundaryError,
    betti,
    boundary_matrix,
    check_composition,
    homological_connectivity,
    invariant_factors,
    sphere_check,
)

# six-vertex real projective plane
RP2 = from_facets(6, [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5],
                      [1, 2, 4], [2, 3, 5], [1, 3, 4], [1, 3, 5], [2, 4, 5]])


@st.composite
def complexes(draw):
    m = draw(st.integers(1, 6))
    facets = draw(st.lists(st.integers(1, (1 << m) - 1), min_size=1, max_size=7))
    return from_facets(m, facets)


def test_torus_board():
    h = betti(standard_chessboard(GridSpec(4, 3)), "Z")
    assert h.betti == (1, 2, 1) and not h.torsion


def test_simplex_is_acyclic():
    h = betti(full_simplex(5), "Z")
    assert h.betti == (1, 0, 0, 0, 0)
    assert homological_connectivity(full_simplex(5)) == math.inf


def test_hexagon_bier_sphere():
    assert betti(bier_sphere(from_facets(3, [[0], [1], [2]])), "Z").betti == (1, 1)


def test_projective_plane_torsion_and_field_dependence():
    assert betti(RP2, "Z").betti == (1, 0, 0)
    assert betti(RP2, "Z").torsion == {1: (2,)}
    assert betti(RP2, "Q").betti == (1, 0, 0)
    assert betti(RP2, "Z2").betti == (1, 1, 1)
    assert homological_connectivity(RP2) == 0
    assert not sphere_check(RP2, 2)


def test_invariant_factors_of_small_matrices():
    # columns of [[2, 0], [0, 3]] -> Smith form diag(1, 6)
    assert invariant_factors([{0: 2}, {1: 3}]) == [1, 6]
    assert invariant_factors([{0: 2, 1: 4}, {0: 4, 1: 2}]) == [2, 6]
    assert invariant_factors([{0: 2}, {1: 2}], modulus=2) == []


def test_connectivity_conventions():
    assert homological_connectivity(SimplicialComplex(3, frozenset({0}))) == -2
    assert homological_connectivity(from_facets(2, [[0], [1]])) == -1
    assert homological_connectivity(standard_chessboard(GridSpec(3, 2))) == 0
    rng = random.Random(11)
    for _ in range(5):
        assert homological_connectivity(bier_sphere(random_complex(5, rng))) == 2
    with pytest.raises(ValueError):
        homological_connectivity(void_complex(2))


def test_five_by_two_board_is_connected():
    K = multiple_chessboard(GridSpec(5, 2), MultiplicityProfile((1, 1), (1,) * 5))
    assert homological_connectivity(K) == 0


def test_sphere_check_examples():
    assert sphere_check(standard_chessboard(GridSpec(3, 2)), 1)
    assert not sphere_check(standard_chessboard(GridSpec(4, 3)), 2)
    assert not sphere_check(void_complex(2), 0)


@given(complexes())
def test_rational_betti_matches_dense_elimination(K):
    assert list(betti(K, "Q").betti) == oracles.betti_q(set(K.faces))


@given(complexes())
def test_euler_characteristic_two_ways(K):
    assert betti(K, "Q").euler_characteristic() == euler_characteristic(K)


@given(complexes())
def test_integer_and_rational_ranks_agree(K):
    assert betti(K, "Z").betti == betti(K, "Q").betti


@given(complexes())
def test_boundary_squares_to_zero(K):
    for p in range(1, K.dim + 1):
        check_composition(boundary_matrix(K, p), boundary_matrix(K, p - 1))


def test_composition_check_catches_bad_signs():
    K = full_simplex(3)
    upper = boundary_matrix(K, 2)
    lower = boundary_matrix(K, 1)
    upper.columns[0] = {i: abs(v) for i, v in upper.columns[0].items()}
    with pytest.raises(BoundaryError):
        check_composition(upper, lower)


def test_every_betti_call_checks_composition():
    before = homology.STATS.boundary_checks
    betti(full_simplex(4), "Z")
    assert homology.STATS.boundary_checks == before + 3


def test_void_complex_has_no_homology():
    assert betti(void_complex(3)).betti == ()


def test_unknown_coefficients_rejected():
    with pytest.raises(ValueError):
        betti(full_simplex(2), "R")
