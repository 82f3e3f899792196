import json

import pytest

from copath.graph import Graph
from copath.oracle import brute_force_decide, search_decide
from copath.pipeline import (
    Decision,
    SolverConfig,
    all_k_spectrum,
    copath_decide,
    replay_witness,
    run_seed,
)

from corpus import FIG1, complete, random_corpus, scale_graph, star

K33 = Graph.from_edges(6, [(u, v) for u in (1, 2, 3) for v in (4, 5, 6)])


@pytest.mark.parametrize("engine", ["auto", "dp", "brute"])
def test_figure1(engine):
    cfg = SolverConfig(engine=engine)
    assert copath_decide(FIG1, 2, cfg).answer
    assert not copath_decide(FIG1, 1, cfg).answer


def test_figure1_no_is_stable_across_seeds():
    for seed in range(20):
        assert not copath_decide(FIG1, 1, SolverConfig(engine="dp", seed=seed)).answer


def test_full_budget_always_yes():
    for g in random_corpus(61, 30, 9):
        assert copath_decide(g, g.m, SolverConfig(engine="dp")).answer


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(degree_bound=9)
    with pytest.raises(ValueError):
        SolverConfig(degree_bound=18)
    with pytest.raises(ValueError):
        SolverConfig(confidence=1.0)
    with pytest.raises(ValueError):
        SolverConfig(engine="quantum")
    SolverConfig(engine="brute", degree_bound=3)
    with pytest.raises(ValueError):
        copath_decide(FIG1, -1)


def test_repetitions():
    assert SolverConfig(confidence=0.99).repetitions == 5
    assert SolverConfig(confidence=0.999).repetitions == 7
    assert SolverConfig(confidence=0.5).repetitions == 1


def test_json_schema():
    d = copath_decide(FIG1, 2, SolverConfig(engine="dp"))
    report = json.loads(json.dumps(d.to_json()))
    assert report["answer"] == "yes" and report["k"] == 2
    assert set(report) >= {"answer", "k", "runs", "engine", "kernel", "branching", "dp", "timings_ms", "witness"}
    assert set(report["kernel"]) == {"n", "m", "k_prime"}
    assert set(report["branching"]) == {"k1_values", "instances", "leaf_bound"}
    assert set(report["dp"]) == {"max_bag", "table_peak"}
    assert report["dp"]["max_bag"] == 3 and report["dp"]["table_peak"] > 0
    assert "witness" not in copath_decide(FIG1, 1).to_json()


def test_yes_carries_replayable_witness():
    cfg = SolverConfig(engine="dp", seed=4)
    for g in random_corpus(62, 25, 8) + [FIG1, complete(5)]:
        for k in range(g.m + 1):
            d = copath_decide(g, k, cfg)
            if d.answer and d.witness is not None:
                assert d.witness.seed is not None
                assert replay_witness(g, k, cfg, d)


def test_brute_witness_replays():
    cfg = SolverConfig()
    d = copath_decide(FIG1, 2, cfg)
    assert d.witness.seed is None
    assert replay_witness(FIG1, 2, cfg, d)
    assert not replay_witness(FIG1, 1, cfg, Decision(answer=False, k=1))


def test_branching_on_high_degree_star():
    g = star(13)
    cfg = SolverConfig(engine="dp")
    yes = copath_decide(g, 11, cfg)
    assert yes.answer
    assert yes.branching["k1_values"] == [0, 9]
    assert yes.branching["instances"] == [0, 55]
    assert yes.branching["leaf_bound"] == [1, 55]
    assert yes.witness.k1 == 9
    assert replay_witness(g, 11, cfg, yes)
    no = copath_decide(g, 10, cfg)
    assert not no.answer
    assert no.branching["k1_values"] == [0, 9]


def test_k1_sweep_is_every_multiple():
    checked = 0
    for g in random_corpus(63, 10, 8, n_min=6) + [star(13), star(20)]:
        for k in range(g.m + 1):
            d = copath_decide(g, k, SolverConfig(engine="dp"))
            if not d.branching["k1_values"]:
                continue  # settled by the kernel
            full = list(range(0, d.kernel["k_prime"] + 1, 9))
            if d.answer:
                assert d.branching["k1_values"] == full[: full.index(d.witness.k1) + 1]
            else:
                assert d.branching["k1_values"] == full
            checked += 1
    assert checked > 50


def test_degree_three_count_rejects():
    d = copath_decide(K33, 2, SolverConfig(engine="dp"))
    assert not d.answer and d.rejected == 1 and d.runs == 0
    assert copath_decide(K33, 4, SolverConfig(engine="dp")).answer


def test_kernel_toggle():
    g = Graph.from_edges(8, [(1, 2), (2, 3), (1, 3), (5, 6), (6, 7)])
    on = copath_decide(g, 3, SolverConfig(engine="dp"))
    off = copath_decide(g, 3, SolverConfig(engine="dp", kernel=False))
    assert on.answer and off.answer
    assert on.kernel == {"n": 3, "m": 3, "k_prime": 3}
    assert off.kernel == {"n": 8, "m": 5, "k_prime": 3}


def test_kernel_decides_edgeless():
    d = copath_decide(Graph(4), 0)
    assert d.answer and d.runs == 0
    assert not copath_decide(Graph(4), 1).answer


def test_deterministic_for_fixed_seed():
    g = scale_graph(1, n=16, chords=5)
    cfg = SolverConfig(engine="dp", seed=9)
    a, b = copath_decide(g, 5, cfg), copath_decide(g, 5, cfg)
    assert (a.answer, a.runs, a.witness) == (b.answer, b.runs, b.witness)


def test_run_seed_distinct():
    seeds = {run_seed(0, k1, i, r) for k1 in (0, 9) for i in range(5) for r in range(7)}
    assert len(seeds) == 70


def test_spectrum():
    assert all_k_spectrum(FIG1) == [2, 3, 4, 5, 6, 7]
    assert all_k_spectrum(FIG1, SolverConfig(engine="brute")) == [2, 3, 4, 5, 6, 7]
    assert all_k_spectrum(Graph(3)) == [0]


def test_agrees_with_oracle_dp_engine():
    for g in random_corpus(64, 40, 7):
        for k in range(g.m + 1):
            d = copath_decide(g, k, SolverConfig(engine="dp", confidence=0.999))
            assert d.answer == brute_force_decide(g, k), (g.edges, k)


def test_medium_instance_against_search():
    g = scale_graph(2, n=24, paths=2, chords=5)
    low = next(k for k in range(g.m + 1) if search_decide(g, k))
    cfg = SolverConfig(engine="dp")
    assert copath_decide(g, low, cfg).answer
    if low:
        assert not copath_decide(g, low - 1, cfg).answer
