"""Tree decompositions: greedy construction, nice form, validation, width bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .graph import DegreeHistogram, Graph


class InvalidDecomposition(ValueError):
    pass


@dataclass
class TreeDecomposition:
    """Bags plus undirected tree edges between bag indices."""

    bags: list[frozenset[int]]
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def validate_decomposition(td: TreeDecomposition, g: Graph) -> list[str]:
    """Violated tree-decomposition axioms, as human-readable strings."""
    problems = []
    nb = len(td.bags)
    if g.n and not nb:
        return ["no bags"]
    if len(td.edges) != max(nb - 1, 0):
        problems.append(f"tree has {len(td.edges)} edges for {nb} bags")
    adj = td.neighbors()
    if nb:
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != nb:
            problems.append("bag tree is disconnected")
    where: dict[int, list[int]] = {v: [] for v in g.vertices}
    for i, bag in enumerate(td.bags):
        for v in bag:
            if v not in where:
                problems.append(f"bag {i} holds unknown vertex {v}")
            else:
                where[v].append(i)
    for v, holders in where.items():
        if not holders:
            problems.append(f"vertex {v} in no bag")
            continue
        holders_set = set(holders)
        seen = {holders[0]}
        stack = [holders[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in holders_set and y not in seen:
                    seen.add(y)
                    stack.append(y)
        if seen != holders_set:
            problems.append(f"bags holding vertex {v} are not connected")
    for eid, (u, v) in g.edges.items():
        if not any(u in b and v in b for b in td.bags):
            problems.append(f"edge {eid} = ({u}, {v}) not covered")
    return problems


# --- greedy elimination orderings -------------------------------------------------


def _eliminate(g: Graph, strategy: str) -> list[int]:
    adj = {v: set(g.adjacency[v]) for v in g.vertices}
    order = []
    while adj:
        if strategy == "min_degree":
            v = min(adj, key=lambda x: (len(adj[x]), x))
        else:
            def fill(x):
                nb = sorted(adj[x])
                return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])
            v = min(adj, key=lambda x: (fill(x), len(adj[x]), x))
        nb = adj.pop(v)
        for a in nb:
            adj[a].discard(v)
            adj[a] |= nb - {a}
        order.append(v)
    return order


def decomposition_from_ordering(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Standard bag-per-vertex decomposition of an elimination ordering."""
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set(g.adjacency[v]) for v in g.vertices}
    higher: dict[int, set[int]] = {}
    for v in order:
        nb = {u for u in adj[v] if pos[u] > pos[v]}
        higher[v] = nb
        for a in nb:
            adj[a] |= nb - {a}
    index = {v: i for i, v in enumerate(order)}
    bags = [frozenset(higher[v] | {v}) for v in order]
    edges = []
    roots = []
    for v in order:
        if higher[v]:
            parent = min(higher[v], key=pos.__getitem__)
            edges.append((index[v], index[parent]))
        else:
            roots.append(index[v])
    # components become one tree by chaining their (vertex-disjoint) roots
    edges += list(zip(roots, roots[1:]))
    return _contract_subset_bags(TreeDecomposition(bags, edges))


def _contract_subset_bags(td: TreeDecomposition) -> TreeDecomposition:
    bags = list(td.bags)
    alive = [True] * len(bags)
    adj = [set(x) for x in td.neighbors()]
    changed = True
    while changed:
        changed = False
        for x in range(len(bags)):
            if not alive[x]:
                continue
            for y in list(adj[x]):
                if bags[x] <= bags[y]:
                    # fold x into its superset neighbour y
                    for z in adj[x]:
                        if z != y:
                            adj[z].discard(x)
                            adj[z].add(y)
                            adj[y].add(z)
                    adj[y].discard(x)
                    adj[x] = set()
                    alive[x] = False
                    changed = True
                    break
    keep = [i for i in range(len(bags)) if alive[i]]
    renum = {old: new for new, old in enumerate(keep)}
    edges = sorted({(min(renum[a], renum[b]), max(renum[a], renum[b]))
                    for a in keep for b in adj[a]})
    return TreeDecomposition([bags[i] for i in keep], edges)


def greedy_decomposition(g: Graph) -> TreeDecomposition:
    """Best of the min-fill and min-degree elimination heuristics."""
    if g.n == 0:
        return TreeDecomposition([])
    best = None
    for strategy in ("min_fill", "min_degree"):
        td = decomposition_from_ordering(g, _eliminate(g, strategy))
        if best is None or td.width < best.width:
            best = td
    return best


# --- nice decompositions ----------------------------------------------------------


class NodeKind(str, Enum):
    LEAF = "leaf"
    INTRODUCE_VERTEX = "introduce_vertex"
    INTRODUCE_EDGE = "introduce_edge"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    kind: NodeKind
    bag: tuple[int, ...]
    children: tuple[int, ...] = ()
    vertex: int | None = None
    edge: int | None = None


@dataclass
class NiceTreeDecomposition:
    """Nodes are stored children-first; ``root`` is the last index."""

    nodes: list[NiceNode]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(x.bag) for x in self.nodes), default=0) - 1

    def parents(self) -> list[int | None]:
        par: list[int | None] = [None] * len(self.nodes)
        for i, node in enumerate(self.nodes):
            for c in node.children:
                par[c] = i
        return par

    def count(self, kind: NodeKind) -> int:
        return sum(1 for x in self.nodes if x.kind == kind)


class _Builder:
    def __init__(self, g: Graph):
        self.g = g
        self.nodes: list[NiceNode] = []

    def add(self, kind, bag, children=(), vertex=None, edge=None) -> int:
        self.nodes.append(NiceNode(kind, tuple(sorted(bag)), tuple(children), vertex, edge))
        return len(self.nodes) - 1

    def forget(self, top: int, v: int) -> int:
        bag = set(self.nodes[top].bag)
        # edges are introduced right below the forget of whichever endpoint leaves first
        incident = self.g.adjacency[v]
        for eid in sorted(incident[u] for u in bag if u in incident):
            top = self.add(NodeKind.INTRODUCE_EDGE, bag, (top,), edge=eid)
        bag.discard(v)
        return self.add(NodeKind.FORGET, bag, (top,), vertex=v)

    def lift(self, top: int, target: frozenset[int]) -> int:
        bag = set(self.nodes[top].bag)
        for v in sorted(bag - target):
            top = self.forget(top, v)
        bag &= target
        for v in sorted(target - bag):
            bag.add(v)
            top = self.add(NodeKind.INTRODUCE_VERTEX, bag, (top,), vertex=v)
        return top


def make_nice(td: TreeDecomposition, g: Graph, root: int = 0) -> NiceTreeDecomposition:
    """Convert a valid decomposition into nice form with the same width."""
    problems = validate_decomposition(td, g)
    if problems:
        raise InvalidDecomposition("; ".join(problems))
    b = _Builder(g)
    if not td.bags:
        b.add(NodeKind.LEAF, ())
        return NiceTreeDecomposition(b.nodes)
    adj = td.neighbors()
    # iterative post-order over the rooted bag tree
    order, parent = [], {root: None}
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in adj[x]:
            if y != parent[x]:
                parent[y] = x
                stack.append(y)
    top_of: dict[int, int] = {}
    for x in reversed(order):
        bag = td.bags[x]
        kids = [top_of.pop(y) for y in sorted(adj[x]) if y != parent[x]]
        if not kids:
            kids = [b.add(NodeKind.LEAF, ())]
        tops = [b.lift(k, bag) for k in kids]
        top = tops[0]
        for other in tops[1:]:
            top = b.add(NodeKind.JOIN, bag, (top, other))
        top_of[x] = top
    top = top_of[root]
    for v in sorted(td.bags[root]):
        top = b.forget(top, v)
    return NiceTreeDecomposition(b.nodes)


def nice_decomposition(g: Graph) -> NiceTreeDecomposition:
    return make_nice(greedy_decomposition(g), g)


@dataclass(frozen=True)
class Violation:
    kind: str
    node: int | None
    detail: str = ""


def validate_nice(ntd: NiceTreeDecomposition, g: Graph) -> list[Violation]:
    """Every broken nice-decomposition invariant; an empty list means valid."""
    out: list[Violation] = []
    nodes = ntd.nodes
    if not nodes:
        return [Violation("empty", None)]
    bag_of = [set(x.bag) for x in nodes]
    parent: list[int | None] = [None] * len(nodes)
    introduced: dict[int, int] = {}
    expected_children = {NodeKind.LEAF: 0, NodeKind.JOIN: 2}
    for i, x in enumerate(nodes):
        want = expected_children.get(x.kind, 1)
        if len(x.children) != want:
            out.append(Violation("bad-child-count", i, f"{x.kind.value} has {len(x.children)}"))
            continue
        for c in x.children:
            if not 0 <= c < i:
                out.append(Violation("child-order", i, f"child {c}"))
                continue
            if parent[c] is not None:
                out.append(Violation("shared-child", i, f"child {c}"))
            parent[c] = i
        if any(not 0 <= c < i for c in x.children):
            continue
        bag = bag_of[i]
        if x.kind == NodeKind.LEAF:
            if bag:
                out.append(Violation("leaf-not-empty", i))
        elif x.kind == NodeKind.INTRODUCE_VERTEX:
            child = bag_of[x.children[0]]
            if x.vertex in child or bag != child | {x.vertex}:
                out.append(Violation("introduce-vertex-mismatch", i, f"v={x.vertex}"))
        elif x.kind == NodeKind.FORGET:
            child = bag_of[x.children[0]]
            if x.vertex not in child or bag != child - {x.vertex}:
                out.append(Violation("forget-mismatch", i, f"v={x.vertex}"))
        elif x.kind == NodeKind.JOIN:
            if any(bag_of[c] != bag for c in x.children):
                out.append(Violation("join-mismatch", i))
        elif x.kind == NodeKind.INTRODUCE_EDGE:
            if bag_of[x.children[0]] != bag:
                out.append(Violation("introduce-edge-mismatch", i, "bag differs from child"))
            if x.edge not in g.edges:
                out.append(Violation("unknown-edge", i, f"e={x.edge}"))
                continue
            u, v = g.edges[x.edge]
            if u not in bag or v not in bag:
                out.append(Violation("introduce-edge-mismatch", i, f"endpoints of e={x.edge} absent"))
            if x.edge in introduced:
                out.append(Violation("duplicate-introduce-edge", i, f"e={x.edge} also at {introduced[x.edge]}"))
            else:
                introduced[x.edge] = i
    for eid in sorted(set(g.edges) - introduced.keys()):
        out.append(Violation("missing-introduce-edge", None, f"e={eid}"))
    root = ntd.root
    if any(p is None for i, p in enumerate(parent) if i != root):
        out.append(Violation("detached-node", None))
    if g.n and nodes[root].kind != NodeKind.FORGET:
        out.append(Violation("root-not-forget", root, nodes[root].kind.value))
    if bag_of[root]:
        out.append(Violation("root-bag-not-empty", root))
    tops: dict[int, int] = {}
    for i, bag in enumerate(bag_of):
        p = parent[i]
        for v in bag:
            if p is None or v not in bag_of[p]:
                tops[v] = tops.get(v, 0) + 1
    for v in g.vertices:
        introduced_somewhere = any(v in b for b in bag_of)
        if not introduced_somewhere:
            out.append(Violation("vertex-missing", None, f"v={v}"))
        elif tops.get(v, 0) != 1:
            out.append(Violation("vertex-not-connected", None, f"v={v}"))
    return out


# --- analytic bounds ---------------------------------------------------------------

# Per-degree treewidth coefficients for degrees 3..17, as printed (fixed-point).
TW_COEFFICIENTS = {
    3: 0.1667, 4: 0.3334, 5: 0.4334, 6: 0.5112, 7: 0.5699, 8: 0.6163, 9: 0.6538,
    10: 0.6847, 11: 0.7105, 12: 0.7325, 13: 0.7514, 14: 0.7678, 15: 0.7822,
    16: 0.7949, 17: 0.8062,
}


def tw_upper_bound(h: DegreeHistogram, eps: float = 0.0) -> float:
    """Degree-sequence treewidth bound (valid for large enough graphs)."""
    if eps < 0:
        raise ValueError("eps must be non-negative")
    total = sum(c * h[d] for d, c in TW_COEFFICIENTS.items())
    return total + h.at_least_18 + eps * h.n


def n3_bound(k: int, h: DegreeHistogram) -> int:
    """Most degree-3 vertices a yes-instance with budget ``k`` can have."""
    excess = sum((d - 2) * c for d, c in h.counts.items() if d >= 4)
    return max(0, 2 * k - excess)


def analytic_k_bound(k: int, n: int, eps: float = 0.0) -> float:
    """``k/3 + eps*n``; diagnostic only, the additive constant is unknown."""
    return k / 3 + eps * n


# --- PACE .td text format -----------------------------------------------------------


def format_td(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {n}"]
    lines += [f"b {i} " + " ".join(map(str, sorted(bag))) for i, bag in enumerate(td.bags, 1)]
    lines = [ln.rstrip() for ln in lines]
    lines += [f"{a + 1} {b + 1}" for a, b in td.edges]
    return "\n".join(lines) + "\n"


def parse_td(text: str) -> TreeDecomposition:
    bags: dict[int, frozenset[int]] = {}
    edges = []
    count = None
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "s":
            count = int(parts[2])
        elif parts[0] == "b":
            bags[int(parts[1])] = frozenset(map(int, parts[2:]))
        else:
            edges.append((int(parts[0]) - 1, int(parts[1]) - 1))
    if count is None or sorted(bags) != list(range(1, count + 1)):
        raise InvalidDecomposition("malformed .td document")
    return TreeDecomposition([bags[i] for i in range(1, count + 1)], edges)
