import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadcolor.errors import InputError, StructureError
from roadcolor.graph import (
    DirectedGraph,
    check_assumption_A,
    cyclic_classes,
    is_strongly_connected,
    period,
    positivity_exponent,
    validate_outdegree,
)

from oracles import period_by_return_times, positivity_exponent_by_powers

COMPLETE_MINUS_ID = [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
FIVE = [[0, 0, 0, 1, 0], [2, 0, 0, 1, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 1], [0, 1, 1, 0, 1]]
TWO_CYCLE = [[0, 1], [1, 0]]


def test_rejects_bad_matrices():
    with pytest.raises(InputError):
        DirectedGraph.from_matrix([[0, 1]])
    with pytest.raises(InputError):
        DirectedGraph.from_matrix([[0, -1], [1, 0]])
    with pytest.raises(InputError):
        DirectedGraph.from_matrix([])


def test_outdegree():
    assert validate_outdegree(DirectedGraph.from_matrix(FIVE)) == 2
    assert validate_outdegree(DirectedGraph.from_matrix([[1, 1], [0, 1]])) is None


def test_entry_is_column_to_row():
    g = DirectedGraph.from_matrix(FIVE)
    assert g.entry(2, 1) == 2
    assert g.out_neighbors(1) == [2]


def test_three_site_graph_properties():
    props = check_assumption_A(DirectedGraph.from_matrix(COMPLETE_MINUS_ID))
    assert props.assumption_A
    assert props.period == 1
    assert props.positivity_exponent == positivity_exponent_by_powers(COMPLETE_MINUS_ID) == 2


def test_five_site_graph_properties():
    props = check_assumption_A(DirectedGraph.from_matrix(FIVE))
    assert props.assumption_A
    assert props.positivity_exponent == positivity_exponent_by_powers(FIVE) == 5


def test_two_cycle_is_periodic():
    g = DirectedGraph.from_matrix(TWO_CYCLE)
    props = check_assumption_A(g)
    assert props.strongly_connected
    assert props.period == 2
    assert not props.assumption_A
    assert props.positivity_exponent is None
    assert cyclic_classes(g) == [[1], [2]]


def test_single_site():
    assert is_strongly_connected(DirectedGraph.from_matrix([[1]]))
    assert not is_strongly_connected(DirectedGraph.from_matrix([[0]]))


def test_period_needs_strong_connectivity():
    g = DirectedGraph.from_matrix([[1, 0], [1, 1]])
    assert not is_strongly_connected(g)
    with pytest.raises(StructureError):
        period(g)
    assert check_assumption_A(g).period is None


def test_cyclic_classes_of_bipartite_graph():
    g = DirectedGraph.from_matrix([[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]])
    assert period(g) == 2
    assert cyclic_classes(g) == [[1, 2], [3, 4]]


@st.composite
def constant_outdegree_graphs(draw, max_m=6, max_d=3):
    m = draw(st.integers(1, max_m))
    d = draw(st.integers(1, max_d))
    adj = np.zeros((m, m), dtype=int)
    for x in range(m):
        for _ in range(d):
            adj[draw(st.integers(0, m - 1)), x] += 1
    return adj.tolist()


@settings(max_examples=200, deadline=None)
@given(constant_outdegree_graphs())
def test_period_matches_return_times(adj):
    g = DirectedGraph.from_matrix(adj)
    if is_strongly_connected(g):
        assert period(g) == period_by_return_times(adj)


@settings(max_examples=200, deadline=None)
@given(constant_outdegree_graphs())
def test_positivity_exponent_matches_powers(adj):
    g = DirectedGraph.from_matrix(adj)
    props = check_assumption_A(g)
    if props.assumption_A:
        assert positivity_exponent(g) == positivity_exponent_by_powers(adj)
    else:
        assert positivity_exponent_by_powers(adj) is None


@settings(max_examples=100, deadline=None)
@given(constant_outdegree_graphs(), st.randoms(use_true_random=False))
def test_properties_invariant_under_relabelling(adj, rnd):
    g = DirectedGraph.from_matrix(adj)
    perm = list(range(1, g.m + 1))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert is_strongly_connected(h) == is_strongly_connected(g)
    if is_strongly_connected(g):
        assert period(h) == period(g)
        assert positivity_exponent(h) == positivity_exponent(g)
