from collections import Counter

import pytest

from copath.cutcount import WeightAssignment, sample_weights
from copath.graph import Graph, components_and_isolates
from copath.oracle import (
    MarkedCut,
    OracleSizeError,
    brute_force_decide,
    brute_force_decide_naive,
    cc_candidate_parities,
    consistent_cut_law,
    count_cc_candidates,
    count_consistent_cuts,
    is_marked_consistent_cut,
    marked_cc_solution_parities,
    minimum_copath_size,
    search_decide,
)

from corpus import FIG1, TRIANGLE, atlas, complete, random_corpus

EDGE = Graph.from_edges(2, [(1, 2)])


def test_brute_force_examples():
    assert brute_force_decide(TRIANGLE, 1)
    assert brute_force_decide(FIG1, 2)
    assert not brute_force_decide(FIG1, 1)
    k4 = complete(4)
    assert not brute_force_decide(k4, 2)
    assert brute_force_decide(k4, 3)


def test_brute_force_guards():
    assert not brute_force_decide(TRIANGLE, 4)
    with pytest.raises(ValueError):
        brute_force_decide(TRIANGLE, -1)
    with pytest.raises(OracleSizeError):
        brute_force_decide(Graph(17), 0)
    with pytest.raises(OracleSizeError):
        count_consistent_cuts(Graph(9))


def test_minimum_sizes():
    assert minimum_copath_size(FIG1) == 2
    assert minimum_copath_size(complete(4)) == 3
    assert minimum_copath_size(Graph(3)) == 0


def test_consistent_cut_examples():
    assert count_consistent_cuts(EDGE) == 2
    assert count_consistent_cuts(Graph.from_edges(4, [(1, 2), (3, 4)])) == 4
    triangle_plus_isolate = Graph.from_edges(4, [(1, 2), (2, 3), (1, 3)])
    assert count_consistent_cuts(triangle_plus_isolate) == 2


def test_consistent_cut_law_small_corpus():
    for g in random_corpus(11, 40, 8):
        assert count_consistent_cuts(g) == consistent_cut_law(g)


def test_marked_cut_predicate():
    cut = MarkedCut(frozenset({1, 2}), frozenset(), frozenset({0}))
    assert is_marked_consistent_cut(EDGE, cut)
    assert not is_marked_consistent_cut(EDGE, MarkedCut(frozenset(), frozenset({1, 2}), frozenset({0})))
    assert is_marked_consistent_cut(EDGE, MarkedCut(frozenset(), frozenset({1, 2}), frozenset()))
    assert not is_marked_consistent_cut(EDGE, MarkedCut(frozenset({1}), frozenset({2}), frozenset()))
    lonely = Graph(1)
    assert not is_marked_consistent_cut(lonely, MarkedCut(frozenset(), frozenset({1}), frozenset()))


def test_empty_candidate_always_odd():
    for g in atlas(4):
        w = sample_weights(g, 0)
        assert count_cc_candidates(g, w, 0, 0, 0, 0) == 1


def test_single_edge_candidates():
    w = WeightAssignment({0: 5}, {0: 7}, 12)
    assert count_cc_candidates(EDGE, w, 2, 1, 1, 12) == 1
    assert count_cc_candidates(EDGE, w, 2, 1, 0, 5) == 0
    assert cc_candidate_parities(EDGE, w) == {(0, 0, 0, 0), (2, 1, 1, 12)}


def test_marked_solution_parity_matches_candidates():
    """Restricting candidates to one marker per path gives the marked-solution parity."""
    for g in atlas(5):
        for seed in range(3):
            w = sample_weights(g, seed)
            folded = Counter()
            for a, e, m, wt in cc_candidate_parities(g, w):
                if m == a - e:
                    folded[(e, wt)] ^= 1
            assert {k for k, bit in folded.items() if bit} == marked_cc_solution_parities(g, w)


def test_brute_force_monotone():
    for g in random_corpus(3, 40, 7):
        answers = [brute_force_decide(g, k) for k in range(g.m + 1)]
        first = answers.index(True)
        assert all(answers[first:])
        assert answers[-1]


def test_search_agrees_with_enumeration():
    for g in random_corpus(4, 80, 7):
        for k in range(g.m + 1):
            assert search_decide(g, k) == brute_force_decide(g, k), (g.edges, k)


def test_search_out_of_range():
    assert not search_decide(TRIANGLE, -1)
    assert not search_decide(TRIANGLE, 4)
    assert search_decide(Graph(3), 0)


def test_isolate_count_in_law():
    g = Graph.from_edges(5, [(1, 2)])
    cc, iso = components_and_isolates(g)
    assert (cc, iso) == (4, 3)
    assert count_consistent_cuts(g) == 2


def test_pruned_enumeration_matches_plain_enumeration():
    for g in atlas(5) + tuple(random_corpus(5, 60, 7)):
        for k in range(g.m + 2):
            assert brute_force_decide(g, k) == brute_force_decide_naive(g, k), (g.edges, k)


def test_dense_enumeration_finishes():
    k9 = complete(9)
    assert brute_force_decide(k9, k9.m - 8)
    assert not brute_force_decide(k9, k9.m - 9)
    assert brute_force_decide(Graph(0), 0)
