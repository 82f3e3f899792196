"""Exponential-time reference implementations for cross-checking at desk scale.

Everything here enumerates explicitly and shares no code with the dynamic
program beyond the graph type and the degree-label constants.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .cutcount import ONE_V1, ONE_V2, TWO, ZERO, WeightAssignment
from .graph import Graph, components_and_isolates, delete_edges, is_linear_forest

MAX_DECIDE_VERTICES = 16
MAX_CUT_VERTICES = 8
MAX_CANDIDATE_EDGES = 12


class OracleSizeError(ValueError):
    """Input too large for exhaustive enumeration."""


@dataclass(frozen=True)
class MarkedCut:
    V1: frozenset[int]
    V2: frozenset[int]
    M: frozenset[int]


def is_marked_consistent_cut(g: Graph, cut: MarkedCut) -> bool:
    if cut.V1 & cut.V2 or (cut.V1 | cut.V2) != set(g.vertices):
        return False
    for v in g.vertices:
        if not g.adjacency[v] and v not in cut.V1:
            return False
    for u, v in g.edges.values():
        if (u in cut.V1) != (v in cut.V1):
            return False
    return all(eid in g.edges and set(g.edges[eid]) <= cut.V1 for eid in cut.M)


def brute_force_decide(g: Graph, k: int) -> bool:
    """Is there an edge set of size exactly ``k`` whose removal leaves a linear forest?

    Exhaustive over the ``|E| - k`` surviving edges, in edge-id order,
    abandoning a branch once a vertex reaches degree 3 or a cycle closes
    (both are inherited by every superset).
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if g.n > MAX_DECIDE_VERTICES:
        raise OracleSizeError(f"n = {g.n} > {MAX_DECIDE_VERTICES}")
    if k > g.m:
        return False
    keep = g.m - k
    if keep > max(g.n - 1, 0):
        return False  # a forest on n vertices has at most n - 1 edges
    edges = [g.edges[eid] for eid in sorted(g.edges)]
    degree = [0] * (g.n + 1)
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def search(i: int, kept: int) -> bool:
        if kept == keep:
            return True
        if len(edges) - i < keep - kept:
            return False
        u, v = edges[i]
        if degree[u] < 2 and degree[v] < 2:
            ru, rv = find(u), find(v)
            if ru != rv:
                degree[u] += 1
                degree[v] += 1
                parent[ru] = rv
                found = search(i + 1, kept + 1)
                parent[ru] = ru
                degree[u] -= 1
                degree[v] -= 1
                if found:
                    return True
        return search(i + 1, kept)

    return search(0, 0)


def brute_force_decide_naive(g: Graph, k: int) -> bool:
    """Plain enumeration of all ``k``-subsets; only for cross-checking tiny graphs."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > g.m:
        return False
    return any(is_linear_forest(delete_edges(g, removed)) for removed in combinations(sorted(g.edges), k))


def minimum_copath_size(g: Graph) -> int:
    if g.n > MAX_DECIDE_VERTICES:
        raise OracleSizeError(f"n = {g.n} > {MAX_DECIDE_VERTICES}")
    return next(k for k in range(g.m + 1) if brute_force_decide(g, k))


def count_consistent_cuts(g: Graph) -> int:
    """Vertex bipartitions crossed by no edge with every isolate on the V1 side."""
    if g.n > MAX_CUT_VERTICES:
        raise OracleSizeError(f"n = {g.n} > {MAX_CUT_VERTICES}")
    count = 0
    for mask in range(1 << g.n):
        side2 = {v for v in g.vertices if mask >> (v - 1) & 1}
        if any(not g.adjacency[v] for v in side2):
            continue
        if any((u in side2) != (v in side2) for u, v in g.edges.values()):
            continue
        count += 1
    return count


def consistent_cut_law(g: Graph) -> int:
    cc, isolates = components_and_isolates(g)
    return 2 ** (cc - isolates)


def _edge_subsets_max_degree_two(vertices, edges: Mapping[int, tuple[int, int]]):
    ids = sorted(edges)
    for mask in range(1 << len(ids)):
        chosen = [ids[i] for i in range(len(ids)) if mask >> i & 1]
        deg = Counter()
        for eid in chosen:
            u, v = edges[eid]
            deg[u] += 1
            deg[v] += 1
        if all(d <= 2 for d in deg.values()):
            yield chosen, deg


def subtree_candidate_parities(vertices: Iterable[int], edges: Mapping[int, tuple[int, int]],
                               bag: tuple[int, ...], weights: WeightAssignment) -> set:
    """Odd ``(a, e, m, w, s)`` keys over all cc-candidates of ``(vertices, edges)``.

    ``s`` lists the labels of ``bag`` (sorted): degree 0, degree 1 with its
    side, or degree 2.
    """
    vertices = sorted(vertices)
    if len(edges) > MAX_CANDIDATE_EDGES:
        raise OracleSizeError(f"{len(edges)} edges > {MAX_CANDIDATE_EDGES}")
    if len(vertices) > MAX_CUT_VERTICES:
        raise OracleSizeError(f"{len(vertices)} vertices > {MAX_CUT_VERTICES}")
    parity: Counter = Counter()
    for chosen, deg in _edge_subsets_max_degree_two(vertices, edges):
        e = len(chosen)
        a = sum(1 for v in vertices if deg[v])
        base_w = sum(weights.edge[eid] for eid in chosen)
        for mask in range(1 << len(vertices)):
            side2 = {v for i, v in enumerate(vertices) if mask >> i & 1}
            if any(not deg[v] for v in side2):
                continue
            if any((edges[eid][0] in side2) != (edges[eid][1] in side2) for eid in chosen):
                continue
            markable = [eid for eid in chosen if edges[eid][0] not in side2]
            s = []
            for v in bag:
                if deg[v] == 0:
                    s.append(ZERO)
                elif deg[v] == 1:
                    s.append(ONE_V2 if v in side2 else ONE_V1)
                else:
                    s.append(TWO)
            s = tuple(s)
            for r in range(len(markable) + 1):
                for markers in combinations(markable, r):
                    w = base_w + sum(weights.marker[eid] for eid in markers)
                    parity[(a, e, r, w, s)] ^= 1
    return {key for key, bit in parity.items() if bit}


def cc_candidate_parities(g: Graph, weights: WeightAssignment) -> set[tuple[int, int, int, int]]:
    """Odd ``(a, e, m, w)`` keys over all cc-candidates of the whole graph."""
    keys = subtree_candidate_parities(g.vertices, g.edges, (), weights)
    return {key[:4] for key in keys}


def count_cc_candidates(g: Graph, weights: WeightAssignment, a: int, e: int, m: int, w: int) -> int:
    return int((a, e, m, w) in cc_candidate_parities(g, weights))


def marked_cc_solution_parities(g: Graph, weights: WeightAssignment) -> set[tuple[int, int]]:
    """Odd ``(e, w)`` keys over linear-forest edge sets with a proper minimal marking.

    A proper marker set of size equal to the number of non-trivial paths
    holds exactly one edge per path.
    """
    if len(g.edges) > MAX_CANDIDATE_EDGES:
        raise OracleSizeError(f"{len(g.edges)} edges > {MAX_CANDIDATE_EDGES}")
    parity: Counter = Counter()
    for chosen, _ in _edge_subsets_max_degree_two(g.vertices, g.edges):
        sub = Graph(g.n, {eid: g.edges[eid] for eid in chosen})
        if not is_linear_forest(sub):
            continue
        paths: dict[int, list[int]] = {}
        for eid in chosen:
            root = _component_root(sub, sub.edges[eid][0])
            paths.setdefault(root, []).append(eid)
        base_w = sum(weights.edge[eid] for eid in chosen)

        def markings(groups, acc):
            if not groups:
                yield acc
                return
            for eid in groups[0]:
                yield from markings(groups[1:], acc + weights.marker[eid])

        for w in markings(list(paths.values()), base_w):
            parity[(len(chosen), w)] ^= 1
    return {key for key, bit in parity.items() if bit}


def _component_root(g: Graph, v: int) -> int:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in g.adjacency[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return min(seen)


def search_decide(g: Graph, k: int) -> bool:
    """Exact bounded search, independent of the enumerator.

    A vertex of degree at least 3 must lose one of any three incident edges,
    so branch three ways; once the maximum degree is 2, every cycle needs one
    deletion. Surplus budget is spent on surviving path edges, which is
    possible whenever ``k <= |E|``.
    """
    if k < 0 or k > g.m:
        return False
    adj = {v: dict(g.adjacency[v]) for v in g.vertices}

    def cycles() -> int:
        seen = set()
        count = 0
        for start in adj:
            if start in seen or not adj[start]:
                continue
            comp, stack, edge_ends = {start}, [start], 0
            while stack:
                x = stack.pop()
                edge_ends += len(adj[x])
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            count += edge_ends // 2 == len(comp)
        return count

    def remove(u, v):
        del adj[u][v]
        del adj[v][u]

    def solve(budget: int) -> bool:
        heavy = next((v for v in adj if len(adj[v]) >= 3), None)
        if heavy is None:
            return cycles() <= budget
        if budget == 0:
            return False
        for u in sorted(adj[heavy])[:3]:
            eid = adj[heavy][u]
            remove(heavy, u)
            ok = solve(budget - 1)
            adj[heavy][u] = eid
            adj[u][heavy] = eid
            if ok:
                return True
        return False

    return solve(k)
