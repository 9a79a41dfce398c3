import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jugglepipe.coxeter import affine_length
from jugglepipe.errors import (
    CollisionError,
    NegativeThrowError,
    RankDeficientError,
    UnsatisfiableConditionError,
)
from jugglepipe.juggling import (
    JugglingFunction,
    count_cycles,
    enumerate_bounded,
    is_ground_state,
    juggling_poset,
    nested_arc_pairs,
    parse_siteswap,
    positroid_data,
    positroid_of_matrix,
    single_condition_pattern,
    state_at,
    state_graph,
    validate_siteswap,
)

from oracles import affine_inversions, bounded_patterns, rank_exact

J = JugglingFunction.parse


@pytest.mark.parametrize("text,k", [("3", 3), ("061515", 3), ("531", 3), ("4", 4), ("0", 0)])
def test_ball_counts(text, k):
    assert validate_siteswap(parse_siteswap(text)) == k


def test_collision_names_first_landing():
    with pytest.raises(CollisionError) as err:
        validate_siteswap(parse_siteswap("4444661515"))
    assert err.value.time == 8
    assert err.value.throws == (4, 7)


def test_simple_collision():
    with pytest.raises(CollisionError):
        validate_siteswap((5, 4))


def test_ground_state_and_graph():
    assert state_at(JugglingFunction.constant(4, 2), 0).landing == frozenset({1, 2})
    g = state_graph(4, 2, 4)
    assert len(g.vertices) == 6
    assert set(g.vertices) == {frozenset(s) for s in [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]}


def _is_cycle(graph, throws):
    edges = {(a, t): b for a, b, t in graph.edges}
    for start in graph.vertices:
        state = start
        for t in throws:
            state = edges.get((state, t))
            if state is None:
                break
        else:
            if state == start:
                return True
    return False


@pytest.mark.parametrize("throws", [(4, 0, 4, 0), (3, 0, 2, 2), (1, 3, 0, 4)])
def test_named_cycles(throws):
    assert _is_cycle(state_graph(4, 2, 4), throws)


def test_state_rejects_negative_throw():
    with pytest.raises(NegativeThrowError):
        state_at(JugglingFunction.from_window((2, 1)), 0)


def test_ground_state_examples():
    assert is_ground_state(J("566151"))
    assert not is_ground_state(J("661515"))
    assert is_ground_state(JugglingFunction.constant(5, 3))


def test_enumerate_2_1():
    assert sorted(str(f) for f in enumerate_bounded(2, 1)) == ["02", "11", "20"]


@pytest.mark.parametrize("n,k", [(n, k) for n in range(1, 6) for k in range(n + 1)])
def test_enumeration_matches_oracles(n, k):
    found = {f.throws for f in enumerate_bounded(n, k)}
    assert found == set(bounded_patterns(n, k))
    assert len(found) == count_cycles(state_graph(n, k, n), n)


def test_enumerate_4_2_is_33():
    assert len(enumerate_bounded(4, 2)) == count_cycles(state_graph(4, 2, 4), 4) == 33


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 3)])
def test_nested_arcs_equal_length(n, k):
    for f in enumerate_bounded(n, k):
        a = f.to_affine()
        assert nested_arc_pairs(f) == affine_length(a) == affine_inversions(n, a.window)


def test_constant_pattern_is_poset_bottom():
    assert nested_arc_pairs(JugglingFunction.constant(5, 2)) == 0


@pytest.mark.parametrize("n,k", [(3, 1), (4, 2)])
def test_poset_is_graded(n, k):
    p = juggling_poset(n, k)
    assert len(p.elements) == len(enumerate_bounded(n, k))
    for lo, hi in p.covers:
        assert p.rank[hi] == p.rank[lo] + 1


def test_positroid_3401():
    d = positroid_data(J("3401"))
    labels = lambda cs: {c.label(4) for c in cs}
    assert labels(d.essential) == {"rank[3,3]<=0", "rank[3,1]<=1"}
    assert "rank[4,1]<=1" in labels(d.implied)


def test_open_cell_has_no_conditions():
    assert positroid_data(JugglingFunction.constant(5, 2)).essential == ()


def test_single_condition_2333334():
    assert str(single_condition_pattern(7, 3, 1, 3, 2)) == "2333334"


def test_unsatisfiable_condition():
    with pytest.raises(UnsatisfiableConditionError):
        single_condition_pattern(4, 2, 1, 2, 3)


@pytest.mark.parametrize("f", enumerate_bounded(4, 2) + enumerate_bounded(5, 2))
def test_single_condition_round_trip(f):
    for c in positroid_data(f).essential:
        g = single_condition_pattern(f.n, f.k, c.i, c.j, c.bound)
        assert [(e.i, e.j, e.bound) for e in positroid_data(g).essential] == [(c.i, c.j, c.bound)]


@pytest.mark.parametrize("s", [1, 2, -3, Fraction(1, 2)])
def test_matrix_3401(s):
    assert str(positroid_of_matrix([[1, 0, 0, s], [0, 1, 0, 0]])) == "3401"


def test_generic_matrix_gives_constant():
    rng = random.Random(7)
    for _ in range(20):
        m = [[Fraction(rng.randint(1, 50), rng.randint(1, 9)) for _ in range(4)] for _ in range(2)]
        if all(rank_exact([[r[a], r[b]] for r in m]) == 2 for a in range(4) for b in range(a + 1, 4)):
            assert str(positroid_of_matrix(m)) == "2222"


def test_coordinate_columns():
    m = [[1, 0, 0, 0], [0, 0, 1, 0]]
    assert positroid_of_matrix(m).window == (5, 2, 7, 4)


def test_rank_deficient_matrix():
    with pytest.raises(RankDeficientError):
        positroid_of_matrix([[1, 2, 3], [2, 4, 6]])


@st.composite
def full_rank_matrices(draw):
    k = draw(st.integers(1, 3))
    n = draw(st.integers(k, 6))
    rows = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=k, max_size=k))
    return rows


@given(full_rank_matrices(), st.data())
@settings(max_examples=150)
def test_matrix_ranks_match_positroid_data(m, data):
    k, n = len(m), len(m[0])
    if rank_exact(m) < k:
        return
    f = positroid_of_matrix(m)
    assert f.is_bounded and f.k == k
    bounds = {(c.i, c.j): c.bound for c in positroid_data(f).conditions}
    for i in range(1, n + 1):
        for size in range(1, n):
            cols = [(c - 1) % n for c in range(i, i + size)]
            rank = rank_exact([[row[c] for c in cols] for row in m])
            assert rank == bounds.get((i, i + size - 1), min(size, k))
    # row operations do not change the pattern
    lift = [list(r) for r in m]
    c = data.draw(st.integers(1, 3))
    lift[0] = [a + c * b for a, b in zip(lift[0], lift[-1])] if k > 1 else [c * a for a in lift[0]]
    assert positroid_of_matrix(lift) == f
