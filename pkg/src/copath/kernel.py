"""Answer-preserving preprocessing in front of the branching stage.

Only locally provable rules are applied by default:

* a budget larger than the edge count is a no-instance;
* isolated vertices are dropped;
* components that already are paths are dropped. Their edges stay
  available as padding for the exactly-k requirement, so the residual
  budget is clamped to the edges that remain.

Further rule sets can be passed to :func:`kernelize`; each rule maps a
graph to a smaller graph plus the number of path edges it set aside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .graph import Graph, components

Rule = Callable[[Graph], "tuple[Graph, dict[int, int], int] | None"]


@dataclass(frozen=True)
class KernelResult:
    graph: Graph
    k: int
    deleted: int  # k - k', spent on padding inside removed path components
    answer: bool | None = None  # set when the rules already decide the instance
    padding: int = 0  # edges of removed path components
    vertex_map: dict[int, int] = field(default_factory=dict)  # input vertex -> kernel vertex
    applied: tuple[str, ...] = ()


def drop_trivial_components(g: Graph):
    """Remove isolated vertices and path components in one pass."""
    keep, padding = [], 0
    for comp in components(g):
        if len(comp) == 1:
            continue
        size = sum(g.degree(v) for v in comp) // 2
        if size == len(comp) - 1 and all(g.degree(v) <= 2 for v in comp):
            padding += size
            continue
        keep.extend(comp)
    if len(keep) == g.n:
        return None
    sub, relabel = g.induced_by_vertices(keep)
    return sub, relabel, padding


DEFAULT_RULES: tuple[Rule, ...] = (drop_trivial_components,)


def passthrough(g: Graph, k: int) -> KernelResult:
    answer = False if k > g.m else None
    return KernelResult(g, k, 0, answer, 0, {v: v for v in g.vertices})


def kernelize(g: Graph, k: int, rules: Sequence[Rule] = DEFAULT_RULES) -> KernelResult:
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > g.m:
        return KernelResult(g, k, 0, False, 0, {v: v for v in g.vertices}, ("budget-exceeds-edges",))
    mapping = {v: v for v in g.vertices}
    padding = 0
    applied = []
    changed = True
    while changed:
        changed = False
        for rule in rules:
            res = rule(g)
            if res is None:
                continue
            g, relabel, extra = res
            mapping = {old: relabel[mid] for old, mid in mapping.items() if mid in relabel}
            padding += extra
            applied.append(rule.__name__)
            changed = True
    k_prime = min(k, g.m)
    answer = (k_prime == 0) if g.m == 0 else None
    return KernelResult(g, k_prime, k - k_prime, answer, padding, mapping, tuple(applied))
