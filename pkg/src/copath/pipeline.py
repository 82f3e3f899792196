"""End-to-end decision: kernel, budget sweep, degree branching, randomized DP."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .branch import ReducedInstance, deg_branch, leaf_bound
from .cutcount import DPTrace, feasible_budgets, run_dp, sample_weights, tw_copath_decide
from .graph import Graph, degree_histogram
from .kernel import kernelize, passthrough
from .oracle import brute_force_decide
from .treedecomp import n3_bound, nice_decomposition

log = logging.getLogger(__name__)

ENGINES = ("auto", "dp", "brute")
# auto hands small instances to exhaustive search when the subset count stays modest
BRUTE_VERTEX_LIMIT = 12
BRUTE_SUBSET_BUDGET = 50_000


@dataclass(frozen=True)
class SolverConfig:
    degree_bound: int = 10
    confidence: float = 0.99
    seed: int = 0
    engine: str = "auto"
    kernel: bool = True
    join: str = "auto"
    trace_dp: bool = False

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}")
        if not 0 < self.confidence < 1:
            raise ValueError("confidence must lie strictly between 0 and 1")
        if self.engine != "brute" and not 10 <= self.degree_bound <= 17:
            raise ValueError("degree bound must lie in [10, 17]")

    @property
    def repetitions(self) -> int:
        """Independent runs needed so a yes-instance is missed w.p. <= 1 - confidence."""
        return max(1, math.ceil(math.log(1 - self.confidence) / math.log(1 / 3)))


@dataclass(frozen=True)
class Witness:
    k1: int
    instance: int
    seed: int | None  # None when an exact engine answered


@dataclass
class Decision:
    answer: bool
    k: int
    runs: int = 0
    engine: str = "auto"
    witness: Witness | None = None
    kernel: dict = field(default_factory=dict)
    branching: dict = field(default_factory=lambda: {"k1_values": [], "instances": [], "leaf_bound": []})
    dp: dict = field(default_factory=lambda: {"max_bag": 0, "table_peak": 0})
    timings_ms: dict = field(default_factory=dict)
    rejected: int = 0  # reduced instances discarded by the degree-3 count bound

    def to_json(self) -> dict:
        out = {
            "answer": "yes" if self.answer else "no",
            "k": self.k,
            "runs": self.runs,
            "engine": self.engine,
            "kernel": self.kernel,
            "branching": self.branching,
            "dp": self.dp,
            "timings_ms": {k: round(v, 3) for k, v in self.timings_ms.items()},
        }
        if self.witness is not None:
            out["witness"] = asdict(self.witness)
        return out


def run_seed(base: int, k1: int, instance: int, rep: int) -> int:
    return int(np.random.SeedSequence([base, k1, instance, rep]).generate_state(1)[0])


def _use_brute(cfg: SolverConfig, g: Graph, k: int) -> bool:
    if cfg.engine == "dp":
        return False
    return g.n <= BRUTE_VERTEX_LIMIT and math.comb(g.m, k) <= BRUTE_SUBSET_BUDGET


def _certainly_no(g: Graph, k: int) -> bool:
    h = degree_histogram(g)
    return h[3] > n3_bound(k, h)


def copath_decide(g: Graph, k: int, cfg: SolverConfig | None = None) -> Decision:
    cfg = cfg or SolverConfig()
    if k < 0:
        raise ValueError("k must be non-negative")
    clock = time.perf_counter
    t0 = clock()
    decision = Decision(answer=False, k=k, engine=cfg.engine)
    if cfg.engine == "brute":
        decision.answer = brute_force_decide(g, k)
        decision.runs = 1
        decision.timings_ms["total"] = (clock() - t0) * 1e3
        return decision

    kr = kernelize(g, k) if cfg.kernel else passthrough(g, k)
    t_kernel = clock()
    decision.kernel = {"n": kr.graph.n, "m": kr.graph.m, "k_prime": kr.k}
    decision.timings_ms["kernel"] = (t_kernel - t0) * 1e3
    if kr.answer is not None:
        decision.answer = kr.answer
        decision.timings_ms["total"] = (clock() - t0) * 1e3
        return decision

    D = cfg.degree_bound
    branch_ms = solve_ms = 0.0
    # budgets that are not multiples of D-1 never empty the branching budget exactly
    for k1 in range(0, kr.k + 1, D - 1):
        tb = clock()
        instances = deg_branch(kr.graph, kr.k, k1, D, k1)
        branch_ms += (clock() - tb) * 1e3
        decision.branching["k1_values"].append(k1)
        decision.branching["instances"].append(len(instances))
        decision.branching["leaf_bound"].append(leaf_bound(k1, D))
        ts = clock()
        hit = _solve_instances(instances, k1, cfg, decision)
        solve_ms += (clock() - ts) * 1e3
        if hit:
            decision.answer = True
            break
    decision.timings_ms["branching"] = branch_ms
    decision.timings_ms["solve"] = solve_ms
    decision.timings_ms["total"] = (clock() - t0) * 1e3
    return decision


def _solve_instances(instances: list[ReducedInstance], k1: int, cfg: SolverConfig, decision: Decision) -> bool:
    for idx, inst in enumerate(instances):
        gi, k2 = inst.graph, inst.k
        if _certainly_no(gi, k2):
            decision.rejected += 1
            continue
        if _use_brute(cfg, gi, k2):
            decision.runs += 1
            if brute_force_decide(gi, k2):
                decision.witness = Witness(k1, idx, None)
                return True
            continue
        ntd = nice_decomposition(gi)
        decision.dp["max_bag"] = max(decision.dp["max_bag"], ntd.width + 1)
        for rep in range(cfg.repetitions):
            seed = run_seed(cfg.seed, k1, idx, rep)
            trace = DPTrace()
            decision.runs += 1
            ok = tw_copath_decide(gi, k2, ntd, sample_weights(gi, seed), join=cfg.join, trace=trace)
            decision.dp["table_peak"] = max(decision.dp["table_peak"], trace.peak)
            if cfg.trace_dp:
                for i, (kind, size, entries) in enumerate(trace.sizes):
                    log.info("dp k1=%d inst=%d rep=%d node=%d %s bag=%d entries=%d",
                             k1, idx, rep, i, kind, size, entries)
            if ok:
                decision.witness = Witness(k1, idx, seed)
                return True
    return False


def replay_witness(g: Graph, k: int, cfg: SolverConfig, decision: Decision) -> bool:
    """Re-derive the reduced instance behind a yes and re-check it."""
    w = decision.witness
    if w is None:
        return False
    kr = kernelize(g, k) if cfg.kernel else passthrough(g, k)
    inst = deg_branch(kr.graph, kr.k, w.k1, cfg.degree_bound, w.k1)[w.instance]
    if w.seed is None:
        return brute_force_decide(inst.graph, inst.k)
    return tw_copath_decide(inst.graph, inst.k, weights=sample_weights(inst.graph, w.seed))


def all_k_spectrum(g: Graph, cfg: SolverConfig | None = None) -> list[int]:
    """Every budget the instance admits, from full DP tables over the whole graph."""
    cfg = cfg or SolverConfig()
    if cfg.engine == "brute":
        return [k for k in range(g.m + 1) if brute_force_decide(g, k)]
    if g.m == 0:
        return [0]
    ntd = nice_decomposition(g)
    found: set[int] = set()
    for rep in range(cfg.repetitions):
        root = run_dp(g, ntd, sample_weights(g, run_seed(cfg.seed, 0, 0, rep)), join=cfg.join)
        found.update(feasible_budgets(root, g.m))
    return sorted(found)
