import math

import pytest

from copath.branch import deg_branch, leaf_bound
from copath.graph import Graph, delete_edges
from copath.oracle import brute_force_decide

from corpus import FIG1, random_corpus, star


def test_low_degree_is_immediate_leaf():
    out = deg_branch(FIG1, 2, 0, 4)
    assert len(out) == 1
    assert out[0].graph == FIG1 and out[0].k == 2 and out[0].removed == frozenset()


def test_star_one_level():
    g = star(5)
    out = deg_branch(g, 4, 3, 4)
    assert len(out) == math.comb(5, 2) == 10
    for inst in out:
        assert inst.k == 1
        assert inst.graph.m == 2 and inst.graph.max_degree() == 2
        assert sum(1 for v in inst.graph.vertices if inst.graph.degree(v) == 0) == 3


@pytest.mark.parametrize("ell", [1, 2, 4, 5])
def test_budget_not_multiple_is_empty(ell):
    assert deg_branch(star(9), 8, ell, 4) == []
    assert deg_branch(FIG1, 7, ell, 4) == []


def test_no_branching_needed_but_budget_left():
    assert deg_branch(FIG1, 6, 3, 4) == []


def test_leaf_bound_values():
    assert leaf_bound(0, 10) == 1
    assert leaf_bound(9, 10) == 55
    assert leaf_bound(6, 4) == 100
    assert leaf_bound(3, 4) == 10
    assert leaf_bound(1, 4) == math.ceil(10 ** (1 / 3))
    with pytest.raises(ValueError):
        leaf_bound(3, 1)


def test_rejects_tiny_degree_cap():
    with pytest.raises(ValueError):
        deg_branch(FIG1, 2, 0, 2)


def test_deterministic_and_deduplicated():
    g = star(8)
    a = deg_branch(g, 6, 6, 4)
    b = deg_branch(g, 6, 6, 4)
    assert a == b
    removed = [inst.removed for inst in a]
    assert len(set(removed)) == len(removed)


def test_instances_are_edge_deletions():
    for g in random_corpus(31, 40, 9, n_min=5):
        for ell in (0, 3, 6):
            for inst in deg_branch(g, ell, ell, 4):
                assert inst.graph == delete_edges(g, inst.removed)
                assert len(inst.removed) == ell
                assert inst.graph.max_degree() <= 4


def _complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(u, a + v) for u in range(1, a + 1) for v in range(1, b + 1)])


def test_completeness_and_soundness():
    graphs = random_corpus(32, 40, 8, n_min=5) + [star(7), _complete_bipartite(2, 6)]
    D = 3
    for g in graphs:
        if g.m > 15:
            continue
        for k in range(g.m + 1):
            truth = brute_force_decide(g, k)
            found = False
            for k1 in range(0, k + 1, D - 1):
                for inst in deg_branch(g, k, k1, D, k1):
                    hit = brute_force_decide(inst.graph, inst.k)
                    assert truth or not hit
                    found = found or hit
            assert found == truth, (g.edges, k)
