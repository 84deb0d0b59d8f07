import random

import pytest
from hypothesis import given, strategies as st

import oracles
from chessmorse.chessboard import GridSpec, standard_chessboard
from chessmorse.complex_core import (
    FacetFormatError,
    InstanceTooLarge,
    IsomorphismUndecided,
    SimplicialComplex,
    alexander_dual,
    boundary_of_simplex,
    complexes_on,
    deleted_join_jwise,
    euler_characteristic,
    f_vector,
    first_closure_violation,
    format_facets,
    from_faces,
    from_facets,
    full_simplex,
    get_face_cap,
    is_isomorphic,
    join,
    link,
    parse_facets,
    point,
    random_complex,
    relabel,
    set_face_cap,
    skeleton,
    void_complex,
)
from chessmorse.homology import betti, sphere_check


def complexes(max_ground=5):
    @st.composite
    def build(draw):
        m = draw(st.integers(1, max_ground))
        facets = draw(st.lists(st.integers(0, (1 << m) - 1), max_size=6))
        return from_facets(m, facets) if facets else SimplicialComplex(m, frozenset({0}))
    return build()


# -- construction ---------------------------------------------------------------

def test_closure_of_two_facets():
    K = from_facets(3, [[0, 1], [2]])
    assert K.faces == {0, 0b001, 0b010, 0b100, 0b011}


def test_no_facets_gives_void():
    assert from_facets(3, []).is_void


def test_full_simplex_has_all_subsets():
    assert len(from_facets(4, [[0, 1, 2, 3]]).faces) == 16


def test_from_faces_rejects_non_closed_family():
    with pytest.raises(ValueError):
        from_faces(3, [0, 0b011])


@given(complexes())
def test_constructors_are_closed(K):
    assert first_closure_violation(K) is None
    assert K.faces == oracles.closure(K.ground_size, K.facets())


@given(complexes())
def test_f_vector_counts_every_nonempty_face(K):
    assert sum(f_vector(K)) + 1 == len(K.faces)


def test_f_vector_examples():
    assert f_vector(standard_chessboard(GridSpec(4, 3))) == (12, 36, 24)
    assert f_vector(full_simplex(3)) == (3, 3, 1)
    assert f_vector(standard_chessboard(GridSpec(3, 2))) == (6, 6)


def test_euler_characteristic_examples():
    assert euler_characteristic(standard_chessboard(GridSpec(4, 3))) == 0
    assert euler_characteristic(standard_chessboard(GridSpec(3, 2))) == 0
    for m in range(1, 6):
        assert euler_characteristic(full_simplex(m)) == 1


# -- Alexander duality ------------------------------------------------------------

def test_dual_of_three_points_is_itself():
    K = from_facets(3, [[0], [1], [2]])
    assert alexander_dual(K) == K


def test_void_and_full_simplex_are_dual():
    for m in range(0, 5):
        assert alexander_dual(void_complex(m)) == full_simplex(m)
        assert alexander_dual(full_simplex(m)) == void_complex(m)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_duality_is_an_involution_exhaustively(m):
    for K in complexes_on(m, include_void=True):
        D = alexander_dual(K)
        assert D.faces == oracles.alexander_dual(m, set(K.faces))
        assert alexander_dual(D) == K


def test_duality_is_an_involution_on_random_ground_five():
    rng = random.Random(5)
    for _ in range(100):
        K = random_complex(5, rng, proper=False)
        assert alexander_dual(alexander_dual(K)) == K


def test_complexes_on_counts():
    # Dedekind numbers minus the void complex: 2, 5, 19, 167
    assert [sum(1 for _ in complexes_on(m)) for m in range(0, 4)] == [1, 2, 5, 19]
    assert sum(1 for _ in complexes_on(4)) == 167


# -- joins -------------------------------------------------------------------------

def test_join_of_two_points_is_an_edge():
    assert join([point(), point()]) == full_simplex(2)


def test_join_of_two_zero_spheres_is_a_circle():
    s0 = boundary_of_simplex(2)
    J = join([s0, s0])
    assert f_vector(J) == (4, 4)
    assert sphere_check(J, 1)


@given(st.data())
def test_deleted_join_matches_definition(data):
    m = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 3))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    Ks = [random_complex(m, rng, proper=False) for _ in range(n)]
    j = data.draw(st.integers(2, n + 1))
    got = deleted_join_jwise(Ks, j)
    assert set(got.faces) == oracles.deleted_join([set(K.faces) for K in Ks], m, j)


@given(st.data())
def test_deleted_join_with_vacuous_j_is_the_join(data):
    m = data.draw(st.integers(1, 3))
    n = data.draw(st.integers(1, 3))
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    Ks = [random_complex(m, rng, proper=False) for _ in range(n)]
    assert deleted_join_jwise(Ks, n + 1) == join(Ks)


def test_two_fold_deleted_join_of_a_point_is_two_points():
    D = deleted_join_jwise([point(), point()], 2)
    assert D.faces == {0, 0b01, 0b10}


def test_deleted_join_rejects_bad_j():
    with pytest.raises(ValueError):
        deleted_join_jwise([point(), point()], 1)
    with pytest.raises(ValueError):
        deleted_join_jwise([point(), point()], 4)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, 5) if m * n <= 12])
def test_iterated_deleted_join_of_points_is_the_chessboard(m, n):
    inner = deleted_join_jwise([point()] * m, 2)
    outer = deleted_join_jwise([inner] * n, 2)
    assert is_isomorphic(outer, standard_chessboard(GridSpec(m, n))) is not None


# -- skeleta and links --------------------------------------------------------------

@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_skeleton_of_simplex_is_a_deleted_join_of_points(N):
    for k in range(0, N + 1):
        sk = skeleton(full_simplex(N + 1), k)
        dj = deleted_join_jwise([point()] * (N + 1), k + 2)
        assert is_isomorphic(sk, dj) is not None


@given(complexes())
def test_top_skeleton_is_identity(K):
    assert skeleton(K, K.dim) == K


def test_one_skeleton_of_torus_board():
    assert f_vector(skeleton(standard_chessboard(GridSpec(4, 3)), 1)) == (12, 36)


def test_link_of_vertex_in_triangle_boundary():
    L = link(boundary_of_simplex(3), 0b001)
    assert L.faces == {0, 0b010, 0b100}


# -- isomorphism ---------------------------------------------------------------------

@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(m, 5)])
def test_chessboard_transposition_isomorphism(m, n):
    iso = is_isomorphic(standard_chessboard(GridSpec(m, n)), standard_chessboard(GridSpec(n, m)))
    assert iso is not None and iso.verify()


@given(complexes(), st.randoms(use_true_random=False))
def test_shuffled_labels_are_isomorphic(K, rnd):
    perm = list(range(K.ground_size))
    rnd.shuffle(perm)
    L = relabel(K, perm)
    iso = is_isomorphic(K, L)
    assert iso is not None and iso.verify()


def test_hexagon_is_not_two_triangles():
    hexagon = standard_chessboard(GridSpec(3, 2))
    triangles = from_facets(6, [[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]])
    assert f_vector(hexagon) == f_vector(triangles)
    assert is_isomorphic(hexagon, triangles) is None
    assert betti(hexagon, "Q").betti != betti(triangles, "Q").betti


def test_isomorphism_budget_is_reported():
    K = standard_chessboard(GridSpec(4, 3))
    with pytest.raises(IsomorphismUndecided):
        is_isomorphic(K, relabel(K, list(reversed(range(12)))), budget=1)


# -- facet format ----------------------------------------------------------------------

@given(complexes())
def test_facet_format_round_trip(K):
    assert parse_facets(format_facets(K)) == K


@pytest.mark.parametrize("K", [void_complex(3), SimplicialComplex(3, frozenset({0})), full_simplex(0)])
def test_facet_format_round_trip_edge_cases(K):
    assert parse_facets(format_facets(K)) == K


def test_facet_format_comments_and_header_only():
    assert parse_facets("# torus\nm 3\n1 2\n# tail\n3\n") == from_facets(3, [[0, 1], [2]])
    assert parse_facets("m 4\n").is_void


@pytest.mark.parametrize("text,token", [
    ("m 3\n1 x\n", "'x'"),
    ("m 3\n1 4\n", "'4'"),
    ("n 3\n", "'n 3'"),
    ("m -1\n", "'-1'"),
    ("", "header"),
])
def test_facet_format_errors_name_the_token(text, token):
    with pytest.raises(FacetFormatError, match=token):
        parse_facets(text)


def test_face_cap_is_enforced_and_restorable():
    old = get_face_cap()
    try:
        set_face_cap(100)
        with pytest.raises(InstanceTooLarge):
            full_simplex(8)
    finally:
        set_face_cap(old)
    assert len(full_simplex(8).faces) == 256
