"""Simple undirected graphs with stable edge ids, plus the DIMACS-like text format."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping


class GraphFormatError(ValueError):
    """Base class for problems found while parsing a graph document."""


class HeaderError(GraphFormatError):
    pass


class EndpointRangeError(GraphFormatError):
    pass


class DuplicateEdgeError(GraphFormatError):
    pass


class SelfLoopError(GraphFormatError):
    pass


class UnknownEdgeError(KeyError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``1..n``.

    ``edges`` maps a stable edge id to its endpoint pair ``(u, v)`` with
    ``u < v``. Deleting edges keeps the ids of the survivors, so ids need not
    be contiguous.
    """

    n: int
    edges: Mapping[int, tuple[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        normalized = {}
        seen = set()
        for eid, (u, v) in sorted(self.edges.items()):
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise EndpointRangeError(f"edge {eid} = ({u}, {v}) outside 1..{self.n}")
            pair = (u, v) if u < v else (v, u)
            if pair in seen:
                raise DuplicateEdgeError(f"parallel edge {pair}")
            seen.add(pair)
            normalized[eid] = pair
        object.__setattr__(self, "edges", normalized)

    def __hash__(self):
        return hash((self.n, frozenset(self.edges.items())))

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph whose edge ids follow the order of ``pairs``."""
        return cls(n, dict(enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adjacency(self) -> dict[int, dict[int, int]]:
        """``adjacency[u][v]`` is the id of edge uv."""
        adj: dict[int, dict[int, int]] = {v: {} for v in self.vertices}
        for eid, (u, v) in self.edges.items():
            adj[u][v] = eid
            adj[v][u] = eid
        return adj

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def incident_edges(self, v: int) -> list[int]:
        return sorted(self.adjacency[v].values())

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency.values()), default=0)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges.values())

    def induced_by_vertices(self, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
        """Subgraph induced by ``keep``, relabelled to ``1..len(keep)``.

        Edge ids are preserved. Returns the graph and the old-to-new vertex map.
        """
        order = sorted(set(keep))
        relabel = {old: new for new, old in enumerate(order, start=1)}
        edges = {
            eid: (relabel[u], relabel[v])
            for eid, (u, v) in self.edges.items()
            if u in relabel and v in relabel
        }
        return Graph(len(order), edges), relabel


def delete_edges(g: Graph, removed: Iterable[int]) -> Graph:
    """Return ``g`` without the edges whose ids are in ``removed``."""
    removed = set(removed)
    unknown = removed - g.edges.keys()
    if unknown:
        raise UnknownEdgeError(f"unknown edge ids {sorted(unknown)}")
    return Graph(g.n, {eid: uv for eid, uv in g.edges.items() if eid not in removed})


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, isolates included."""
    seen = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        seen.add(start)
        stack = [start]
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def components_and_isolates(g: Graph) -> tuple[int, int]:
    """``(cc, n_I)``: number of components and of degree-0 vertices."""
    isolates = sum(1 for v in g.vertices if not g.adjacency[v])
    return len(components(g)), isolates


def is_linear_forest(g: Graph) -> bool:
    """True iff every component of ``g`` is a path (isolated vertices allowed)."""
    if g.max_degree() > 2:
        return False
    parent = list(range(g.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges.values():
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


@dataclass(frozen=True)
class DegreeHistogram:
    counts: Mapping[int, int]
    n: int

    @property
    def max_degree(self) -> int:
        return max((d for d, c in self.counts.items() if c), default=0)

    def __getitem__(self, degree: int) -> int:
        return self.counts.get(degree, 0)

    @property
    def at_least_18(self) -> int:
        return sum(c for d, c in self.counts.items() if d >= 18)

    @classmethod
    def from_counts(cls, counts: Mapping[int, int]) -> DegreeHistogram:
        counts = {d: c for d, c in counts.items() if c}
        return cls(counts, sum(counts.values()))


def degree_histogram(g: Graph) -> DegreeHistogram:
    return DegreeHistogram.from_counts(Counter(g.degree(v) for v in g.vertices))


def parse_graph(text: str) -> Graph:
    """Parse a ``p edge n m`` / ``e u v`` document (1-indexed, ``c`` comments)."""
    n = None
    declared_m = None
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise HeaderError(f"line {lineno}: second header")
            if len(parts) != 4 or parts[1] not in ("edge", "edges", "tw"):
                raise HeaderError(f"line {lineno}: expected 'p edge n m', got {line!r}")
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise HeaderError(f"line {lineno}: non-integer header field") from None
            if n < 0 or declared_m < 0:
                raise HeaderError(f"line {lineno}: negative header field")
        elif parts[0] == "e":
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e u v', got {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer endpoint") from None
            if u == v:
                raise SelfLoopError(f"line {lineno}: self-loop at vertex {u}")
            if n is None:
                raise HeaderError(f"line {lineno}: edge before 'p edge' header")
            if not (1 <= u <= n and 1 <= v <= n):
                raise EndpointRangeError(f"line {lineno}: endpoint outside 1..{n}")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise DuplicateEdgeError(f"line {lineno}: duplicate edge {pair}")
            seen.add(pair)
            pairs.append(pair)
        else:
            raise GraphFormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise HeaderError("missing 'p edge n m' header")
    if declared_m != len(pairs):
        raise HeaderError(f"header declares {declared_m} edges, found {len(pairs)}")
    return Graph.from_edges(n, pairs)


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = [f"c {comment or 'graph'}", f"p edge {g.n} {g.m}"]
    lines += [f"e {u} {v}" for _, (u, v) in sorted(g.edges.items())]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read())


# Golden instance: two 4-cycles sharing edge 3-4; the smallest co-path set has 2 edges.
FIGURE1_EDGES = ((1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6))


def figure1_graph() -> Graph:
    return Graph.from_edges(6, FIGURE1_EDGES)
