import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from chessmorse.bier import BierFace
from chessmorse.bottleneck import (
    Clutter,
    ClutterError,
    blocker,
    blocker_bruteforce,
    bottleneck_via_morse,
    complement_complex,
    dichotomy_violations,
    dual_complex_identity,
    maxmin_bruteforce,
    minmax_bruteforce,
    parse_clutter,
    parse_weights,
    random_clutter,
    random_injective_weights,
    upper_closure,
    weight_order,
)
from chessmorse.complex_core import SimplicialComplex, boundary_of_simplex, complexes_on, full_simplex

R0 = Clutter.of(3, [[0, 1], [0, 2]])
IDENTITY3 = [1, 2, 3]


@st.composite
def clutters(draw, lo=1, hi=7):
    n = draw(st.integers(lo, hi))
    sets = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6))
    return Clutter.minimal(n, sets)


@st.composite
def weighted(draw, lo=2, hi=8):
    R = draw(clutters(lo, hi))
    values = draw(st.lists(st.fractions(-20, 20, max_denominator=5),
                           min_size=R.ground_size, max_size=R.ground_size, unique=True))
    return R, values


def test_upper_closure_example():
    assert upper_closure(R0) == {0b011, 0b101, 0b111}
    assert upper_closure(Clutter.of(2, [[0]])) == {0b01, 0b11}
    assert upper_closure(Clutter(3, ())) == set()


def test_complement_complex_examples():
    assert complement_complex(R0).faces == {0, 0b001, 0b010, 0b100, 0b110}
    assert complement_complex(Clutter(3, ())) == full_simplex(3)
    assert complement_complex(Clutter.of(3, [[0], [1], [2]])) == SimplicialComplex(3, frozenset({0}))


def test_blocker_examples():
    assert blocker(R0) == Clutter.of(3, [[0], [1, 2]])
    assert blocker(Clutter.of(1, [[0]])) == Clutter.of(1, [[0]])
    with pytest.raises(ClutterError):
        blocker(Clutter(2, ()))


@given(clutters(1, 8))
def test_blocker_matches_exhaustive_search(R):
    S = blocker(R)
    assert set(S.members) == oracles.minimal_hitting_sets(R.ground_size, R.members)
    assert S == blocker_bruteforce(R)


@given(clutters(1, 8))
def test_blocker_is_an_involution(R):
    assert blocker(blocker(R)) == R


def test_dual_identity_exhaustively_on_four():
    for K in complexes_on(4):
        facets = K.facets()
        if facets == [0]:
            continue
        R = Clutter(4, tuple(facets))
        rep = dual_complex_identity(R)
        assert rep.holds, (R, rep.counterexample)
    assert dual_complex_identity(Clutter(4, ())).holds


def test_dual_identity_examples():
    assert dual_complex_identity(R0).dual_of_K.faces == {0, 0b010, 0b100}
    singletons = Clutter.of(3, [[0], [1], [2]])
    rep = dual_complex_identity(singletons)
    assert rep.holds and rep.dual_of_K == boundary_of_simplex(3)


@given(clutters(1, 8))
def test_dichotomy_on_every_partition(R):
    assert dichotomy_violations(R, blocker(R)) == []


def test_dichotomy_fails_for_a_wrong_partner():
    assert dichotomy_violations(R0, R0) != []


def test_minmax_and_maxmin_examples():
    a = minmax_bruteforce(R0, IDENTITY3)
    assert (a.value, a.witness) == (2, 0b011)
    b = maxmin_bruteforce(Clutter.of(3, [[0], [1, 2]]), IDENTITY3)
    assert (b.value, b.witness) == (2, 0b110)
    single = Clutter.of(3, [[0, 2]])
    assert minmax_bruteforce(single, [5, 1, 4]).value == 5
    assert maxmin_bruteforce(single, [5, 1, 4]).value == 4


def test_morse_bottleneck_examples():
    mb = bottleneck_via_morse(R0, IDENTITY3)
    assert mb.value == 2 and mb.element == 1
    assert mb.cell == BierFace(3, 0b001, 0b100)
    assert str(mb.cell) == "({1}, {3}; {2})"
    assert bottleneck_via_morse(Clutter.of(2, [[0]]), [1, 2]).value == 1


def test_all_singletons_gives_the_minimum_weight():
    R = Clutter.of(4, [[0], [1], [2], [3]])
    f = [Fraction(3), Fraction(-1), Fraction(7), Fraction(2)]
    assert bottleneck_via_morse(R, f).value == -1 == minmax_bruteforce(R, f).value


@given(weighted())
def test_morse_value_matches_both_brute_forces(inst):
    R, f = inst
    a = minmax_bruteforce(R, f)
    b = maxmin_bruteforce(blocker(R), f)
    mb = bottleneck_via_morse(R, f)
    assert a.value == b.value == mb.value
    assert mb.element == a.element == b.element
    A1, A2 = mb.cell.A1, mb.cell.A2
    assert not any(x & A1 == x for x in R.members)
    assert not any(y & A2 == y for y in blocker(R).members)
    assert mb.cell.B == 1 << mb.element


@given(weighted(), st.integers(1, 5), st.integers(-10, 10))
def test_increasing_transform_keeps_the_element(inst, scale, shift):
    R, f = inst
    g = [scale * x * x * x + shift for x in f]
    e = bottleneck_via_morse(R, f).element
    mb = bottleneck_via_morse(R, g)
    assert mb.element == e and mb.value == g[e]


def test_ties_are_broken_by_index():
    assert weight_order([2, 1, 2, 1]) == [1, 3, 0, 2]
    R = Clutter.of(3, [[0], [1]])
    assert bottleneck_via_morse(R, [5, 5, 0]).element == 0
    assert minmax_bruteforce(R, [5, 5, 0]).element == 0


def test_seeded_random_instances():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(4, 9)
        R = random_clutter(n, rng)
        f = random_injective_weights(n, rng)
        assert len(set(f)) == n
        assert bottleneck_via_morse(R, f).value == minmax_bruteforce(R, f).value


def test_input_validation():
    with pytest.raises(ClutterError):
        Clutter(3, (0,))
    with pytest.raises(ClutterError):
        Clutter(3, (0b01, 0b11))
    with pytest.raises(ClutterError):
        Clutter(2, (0b100,))
    with pytest.raises(ClutterError):
        bottleneck_via_morse(Clutter(3, ()), [1, 2, 3])
    with pytest.raises(ValueError):
        bottleneck_via_morse(R0, [1, 2])
    with pytest.raises(ClutterError):
        bottleneck_via_morse(Clutter.of(17, [[0]]), list(range(17)))


def test_parsers():
    assert parse_clutter(3, "1 2;1 3") == R0
    assert parse_clutter(3, "1,2; 1,3;") == R0
    assert parse_weights("3.5, 1,2/3") == [Fraction(7, 2), Fraction(1), Fraction(2, 3)]
    with pytest.raises(ClutterError, match="'x'"):
        parse_clutter(3, "1 x")
    with pytest.raises(ClutterError, match="'4'"):
        parse_clutter(3, "1 4")
    with pytest.raises(ValueError, match="'a'"):
        parse_weights("1,a")
