"""Degree-bounding branching that turns one instance into bounded-degree instances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .graph import Graph, delete_edges


@dataclass(frozen=True)
class ReducedInstance:
    graph: Graph
    k: int
    removed: frozenset[int]  # edge ids deleted while branching


def deg_branch(g: Graph, k: int, ell: int, D: int, b: int | None = None) -> list[ReducedInstance]:
    """Reduced instances ``(G_i, k - ell)`` with max degree at most ``D``.

    While a vertex has degree above ``D`` and at least ``D - 1`` deletions
    remain, fix its ``D + 1`` lowest-id neighbours and branch on which pair of
    those edges survives. Branches whose budget does not end at exactly zero
    are discarded. Identical edge sets reached twice are returned once, in
    sorted order of their deleted edge ids.
    """
    if D < 3:
        raise ValueError("degree bound must be at least 3")
    if b is None:
        b = ell
    found: dict[frozenset[int], Graph] = {}
    visited: set[frozenset[int]] = set()

    def recurse(h: Graph, budget: int, removed: frozenset[int]):
        # the state is fully determined by the deleted edges
        if removed in visited:
            return
        visited.add(removed)
        v = max(h.vertices, key=lambda x: (h.degree(x), -x), default=None)
        deg = h.degree(v) if v is not None else 0
        if deg >= D + 1 and budget >= D - 1:
            chosen = [h.adjacency[v][u] for u in h.neighbors(v)[: D + 1]]
            for pair in combinations(chosen, 2):
                drop = [e for e in chosen if e not in pair]
                recurse(delete_edges(h, drop), budget - (D - 1), removed | frozenset(drop))
        elif budget == 0 and deg <= D:
            found[removed] = h

    recurse(g, b, frozenset())
    return [ReducedInstance(found[r], k - ell, r) for r in sorted(found, key=sorted)]


def leaf_bound(ell: int, D: int) -> int:
    """Search-tree leaf bound ``C(D+1, 2) ** (ell / (D-1))``, rounded up."""
    if D < 2:
        raise ValueError("degree bound must be at least 2")
    base = math.comb(D + 1, 2)
    depth, rest = divmod(ell, D - 1)
    if rest == 0:
        return base ** depth
    return math.ceil(base ** (ell / (D - 1)))
