import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from roadcolor.errors import PreconditionError, UnsupportedError
from roadcolor.graph import DirectedGraph
from roadcolor.mapping import RoadColoring, apply_word, constant
from roadcolor.sync import (
    SubsetKind,
    analyze_sync,
    classify_subset,
    f_cliques,
    find_synchronizing_coloring,
    is_synchronizing_subset,
    min_image_rank,
    pad_word,
    partition_from_word,
    reachable_images,
    satisfies_no_overlap,
    shortest_synchronizing_word,
    synchronizing_pairs,
)

from conftest import (
    five_site_coloring,
    periodic_collapsing,
    periodic_rotations,
    rotation_coloring,
    three_site_coloring,
)
from oracles import brute_images, brute_min_rank, brute_shortest_sync_length, brute_sync_pairs

ALL_FIXTURES = [
    three_site_coloring,
    rotation_coloring,
    five_site_coloring,
    periodic_rotations,
    periodic_collapsing,
]


def images_of(C):
    return [c.image for c in C.colors]


def test_three_site_coloring_synchronizes_to_site_three():
    C = three_site_coloring()
    w = shortest_synchronizing_word(C)
    assert len(w) == 2 == brute_shortest_sync_length(images_of(C))
    assert w.colors == (1, 2)
    assert w.mapping(3) == constant(3, 3)


@pytest.mark.parametrize("make", [rotation_coloring, five_site_coloring])
def test_non_synchronizing_fixtures(make):
    C = make()
    assert shortest_synchronizing_word(C) is None
    assert brute_shortest_sync_length(images_of(C)) is None
    rank, witness = min_image_rank(C)
    assert rank == 3 == brute_min_rank(images_of(C))
    assert len(apply_word(witness, range(1, C.m + 1))) == 3


def test_rotation_witness_is_empty():
    rank, witness = min_image_rank(rotation_coloring())
    assert rank == 3 and len(witness) == 0


def test_five_site_f_cliques():
    assert f_cliques(five_site_coloring()) == {frozenset({1, 3, 5}), frozenset({2, 4, 5})}


def test_five_site_partitions():
    C = five_site_coloring()
    rep = analyze_sync(C)
    assert rep.witness_word.colors == (2,)
    assert rep.anchors == (2, 4, 5)
    assert rep.partition == (frozenset({1, 4}), frozenset({5}), frozenset({2, 3}))
    anchors, blocks = partition_from_word(C, C.word_applied((1, 2, 1)))
    assert anchors == (1, 3, 5)
    assert blocks == (frozenset({5}), frozenset({3, 4}), frozenset({1, 2}))


def test_partition_rejects_non_clique_word():
    with pytest.raises(PreconditionError):
        partition_from_word(five_site_coloring(), five_site_coloring().word(()))


def test_five_site_subset_classes():
    C = five_site_coloring()
    assert classify_subset(C, {2, 5}).kind is SubsetKind.DEADLOCK
    for pair in ({1, 2}, {1, 4}, {2, 3}, {3, 4}):
        got = classify_subset(C, pair)
        assert got.synchronizing and not got.stable
        assert got.kind is SubsetKind.SYNCHRONIZING_NON_STABLE
    assert classify_subset(C, {1, 3, 5}).kind is SubsetKind.DEADLOCK


def test_singletons_are_stable():
    C = five_site_coloring()
    for x in range(1, 6):
        assert classify_subset(C, {x}).kind is SubsetKind.STABLE


def test_synchronizing_coloring_has_only_stable_subsets():
    C = three_site_coloring()
    for s in ({1, 2}, {2, 3}, {1, 2, 3}):
        assert classify_subset(C, s).kind is SubsetKind.STABLE


def test_classify_rejects_empty():
    with pytest.raises(PreconditionError):
        classify_subset(five_site_coloring(), set())


def test_five_site_pairs():
    C = five_site_coloring()
    assert synchronizing_pairs(C) == brute_sync_pairs(images_of(C))
    assert frozenset({2, 5}) not in synchronizing_pairs(C)


@pytest.mark.parametrize("make", ALL_FIXTURES)
def test_f_clique_images_on_fixtures(make):
    C = make()
    rank, _ = min_image_rank(C)
    cliques = f_cliques(C)
    for V0 in cliques:
        assert len(V0) == rank
        for sigma in C.colors:
            image = sigma.apply(V0)
            assert image in cliques
            assert len(image) == rank


def test_no_overlap_condition():
    # (1, 2, 1, 2) has the border (1, 2); (1, 2) is not longer than r.
    assert satisfies_no_overlap((1, 1, 2), 1)
    assert not satisfies_no_overlap((1, 2, 1, 2), 2)
    assert not satisfies_no_overlap((1, 2), 2)


def test_pad_word_five_sites():
    C = five_site_coloring()
    padded = pad_word(analyze_sync(C).witness_word, C, 5)
    assert len(padded) == 11
    assert padded.applied_colors == (2,) + (1,) * 5 + (2,) * 5
    assert satisfies_no_overlap(padded.applied, 5)
    assert apply_word(padded, range(1, 6)) in f_cliques(C)


def test_pad_word_needs_two_colors():
    C = RoadColoring.from_images((2, 1), (2, 1))
    with pytest.raises(UnsupportedError):
        pad_word(C.word(()), C, 1)


def test_site_cap(monkeypatch):
    C = five_site_coloring()
    monkeypatch.setenv("ROADCOLOR_MAX_SITES", "4")
    with pytest.raises(UnsupportedError):
        shortest_synchronizing_word(C)
    monkeypatch.setenv("ROADCOLOR_MAX_SITES", "99")
    assert shortest_synchronizing_word(C) is None


def test_find_coloring():
    for adj in ([[0, 1, 1], [1, 0, 1], [1, 1, 0]], five_site_coloring().graph.adjacency):
        g = DirectedGraph.from_matrix(adj)
        C = find_synchronizing_coloring(g)
        assert C is not None and C.graph == g
        assert shortest_synchronizing_word(C) is not None
    assert find_synchronizing_coloring(DirectedGraph.from_matrix([[0, 1], [1, 0]])) is None


def test_reachable_images_include_start():
    C = five_site_coloring()
    assert frozenset(range(1, 6)) in reachable_images(C)


small_colorings = st.integers(1, 4).flatmap(
    lambda m: st.lists(
        st.tuples(*[st.integers(1, m)] * m), min_size=1, max_size=2
    )
)


@settings(max_examples=150, deadline=None)
@given(small_colorings)
def test_search_matches_brute_force(images):
    C = RoadColoring.from_images(*images)
    # (m - 1)^2 bounds the shortest reset word for m <= 4.
    bound = (C.m - 1) ** 2
    w = shortest_synchronizing_word(C)
    brute = brute_shortest_sync_length(images, max_len=bound)
    assert (None if w is None else len(w)) == brute
    if w is not None:
        assert len(set(w.mapping(C.m).image)) == 1
    assert min_image_rank(C)[0] == brute_min_rank(images, max_len=bound)
    assert synchronizing_pairs(C) == brute_sync_pairs(images, max_len=bound)
    assert set(reachable_images(C)) == brute_images(images, range(1, C.m + 1), max_len=2 ** C.m)


@settings(max_examples=150, deadline=None)
@given(small_colorings, st.data())
def test_classification_consistent(images, data):
    C = RoadColoring.from_images(*images)
    subset = data.draw(st.sets(st.integers(1, C.m), min_size=1))
    got = classify_subset(C, subset)
    assert got.synchronizing == is_synchronizing_subset(C, subset)
    if got.stable:
        assert all(is_synchronizing_subset(C, s) for s in reachable_images(C, subset))
    pairs = brute_sync_pairs(images, max_len=(C.m - 1) ** 2)
    items = sorted(subset)
    has_pair = any(frozenset((a, b)) in pairs for a in items for b in items if a < b)
    assert got.deadlock == (not has_pair)


@settings(max_examples=100, deadline=None)
@given(small_colorings)
def test_f_clique_images_random(images):
    C = RoadColoring.from_images(*images)
    rank, _ = min_image_rank(C)
    cliques = f_cliques(C)
    for V0 in cliques:
        assert len(V0) == rank
        for sigma in C.colors:
            assert sigma.apply(V0) in cliques
