"""Mod-2 Cut&Count dynamic program over a nice tree decomposition.

A table entry ``A_x(a, e, m, w, s)`` is the parity of the number of
cc-candidates below node ``x``: max-degree-2 edge sets with ``e`` edges and
``a`` non-isolated vertices, together with a consistent cut and ``m`` marker
edges on the V1 side, of total weight ``w``, whose bag vertices have the
degree labels ``s``.

Storage: ``{(s, a_gone, e, m): bits}`` where ``bits`` is an int whose bit
``w`` is the parity at weight ``w``. ``a_gone`` counts non-isolated vertices
that were already forgotten; the public ``a`` adds the non-zero labels of
``s``. With that split the join adds ``a_gone`` directly, which is the same
bookkeeping as subtracting the doubly counted degree-1 bag vertices.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Mapping

import numpy as np

from .convolution import MAX_FAST_DIM, z4_inverse, z4_transform, MODULUS
from .graph import Graph
from .treedecomp import NiceTreeDecomposition, NodeKind, nice_decomposition, validate_nice

log = logging.getLogger(__name__)

# Degree labels. Degree-1 vertices remember their side of the cut.
ZERO, ONE_V1, ONE_V2, TWO = 0, 1, 2, 3
LABEL_NAMES = ("0", "1_1", "1_2", "2")
PHI = (0, 1, 3, 2)  # label -> Z_4
RHO = (0, 1, 1, 2)  # label -> degree
_PHI_INV = {v: k for k, v in enumerate(PHI)}


@dataclass(frozen=True)
class WeightAssignment:
    """Independent weights in ``[1, N]`` for an edge's solution and marker copies."""

    edge: Mapping[int, int]
    marker: Mapping[int, int]
    N: int

    def __post_init__(self):
        if self.edge.keys() != self.marker.keys():
            raise ValueError("edge and marker weights must cover the same edges")
        for w in (*self.edge.values(), *self.marker.values()):
            if not 1 <= w <= self.N:
                raise ValueError(f"weight {w} outside [1, {self.N}]")


def sample_weights(g: Graph, seed=None) -> WeightAssignment:
    """Draw all 2|E| weights i.i.d. uniform on ``[1, 6|E|]``."""
    N = 6 * g.m
    if N == 0:
        return WeightAssignment({}, {}, 0)
    rng = np.random.default_rng(seed)
    ids = sorted(g.edges)
    draws = rng.integers(1, N + 1, size=2 * len(ids))
    edge = {eid: int(x) for eid, x in zip(ids, draws[: len(ids)])}
    marker = {eid: int(x) for eid, x in zip(ids, draws[len(ids):])}
    return WeightAssignment(edge, marker, N)


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def clmul(x: int, y: int) -> int:
    """Carry-less (GF(2)[w]) product of two weight bitsets."""
    if x.bit_count() > y.bit_count():
        x, y = y, x
    out = 0
    for i in _bits(x):
        out ^= y << i
    return out


@dataclass(frozen=True)
class Bounds:
    """Prune limits when only one budget is queried at the root.

    ``e`` and ``m`` only grow towards the root and the number of skipped
    edges never shrinks, so entries beyond these limits cannot reach a
    queried root key.
    """

    max_e: int
    max_m: int
    max_skipped: int


@dataclass
class DPTable:
    bag: tuple[int, ...]
    entries: dict[tuple[tuple[int, ...], int, int, int], int] = field(default_factory=dict)
    introduced: int = 0  # edges introduced below this node

    def get(self, a: int, e: int, m: int, w: int, s: Mapping[int, int] | tuple[int, ...] = ()) -> int:
        """Parity of ``A(a, e, m, w, s)``; ``s`` maps bag vertices to labels."""
        if isinstance(s, Mapping):
            if set(s) != set(self.bag):
                return 0
            s = tuple(s[v] for v in self.bag)
        a_gone = a - sum(1 for x in s if x != ZERO)
        if w < 0:
            return 0
        return (self.entries.get((tuple(s), a_gone, e, m), 0) >> w) & 1

    def items(self) -> Iterator[tuple[tuple[int, int, int, int, tuple[int, ...]], int]]:
        """Yield ``((a, e, m, w, s), 1)`` for every odd entry."""
        for (s, a_gone, e, m), bits in self.entries.items():
            a = a_gone + sum(1 for x in s if x != ZERO)
            for w in _bits(bits):
                yield (a, e, m, w, s), 1

    def keys(self) -> set[tuple[int, int, int, int, tuple[int, ...]]]:
        return {k for k, _ in self.items()}

    def __len__(self) -> int:
        return sum(bits.bit_count() for bits in self.entries.values())

    def _add(self, key, bits: int, bounds: Bounds | None):
        if not bits:
            return
        if bounds is not None:
            _, _, e, m = key
            if e > bounds.max_e or m > bounds.max_m or self.introduced - e > bounds.max_skipped:
                return
        left = self.entries.get(key, 0) ^ bits
        if left:
            self.entries[key] = left
        else:
            self.entries.pop(key, None)


def dp_leaf() -> DPTable:
    return DPTable((), {((), 0, 0, 0): 1})


def dp_introduce_vertex(child: DPTable, v: int) -> DPTable:
    if v in child.bag:
        raise ValueError(f"vertex {v} already in bag")
    bag = tuple(sorted(child.bag + (v,)))
    pos = bag.index(v)
    out = DPTable(bag, introduced=child.introduced)
    for (s, a, e, m), bits in child.entries.items():
        out.entries[(s[:pos] + (ZERO,) + s[pos:], a, e, m)] = bits
    return out


def dp_introduce_edge(child: DPTable, uv: tuple[int, int], eid: int, weights: WeightAssignment,
                      bounds: Bounds | None = None) -> DPTable:
    """Skip the edge, or take it on side V2, or on side V1 with or without a marker."""
    u, v = uv
    if u not in child.bag or v not in child.bag:
        raise ValueError(f"endpoint of edge {uv} missing from bag {child.bag}")
    iu, iv = child.bag.index(u), child.bag.index(v)
    we, wm = weights.edge[eid], weights.marker[eid]
    out = DPTable(child.bag, introduced=child.introduced + 1)
    for key, bits in child.entries.items():
        out._add(key, bits, bounds)
    for (s, a, e, m), bits in child.entries.items():
        su, sv = s[iu], s[iv]
        for one in (ONE_V1, ONE_V2):
            # an endpoint takes the edge from 0 (becoming 1_j) or from 1_j (becoming 2)
            if su not in (ZERO, one) or sv not in (ZERO, one):
                continue
            t = list(s)
            t[iu] = one if su == ZERO else TWO
            t[iv] = one if sv == ZERO else TWO
            t = tuple(t)
            out._add((t, a, e + 1, m), bits << we, bounds)
            if one == ONE_V1:
                out._add((t, a, e + 1, m + 1), bits << (we + wm), bounds)
    return out


def dp_forget(child: DPTable, h: int, bounds: Bounds | None = None) -> DPTable:
    if h not in child.bag:
        raise ValueError(f"vertex {h} not in bag")
    pos = child.bag.index(h)
    bag = child.bag[:pos] + child.bag[pos + 1:]
    out = DPTable(bag, introduced=child.introduced)
    for (s, a, e, m), bits in child.entries.items():
        key = (s[:pos] + s[pos + 1:], a + (s[pos] != ZERO), e, m)
        out._add(key, bits, bounds)
    return out


def _compatible_partners(s1: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(s2, s)`` compatible with ``s1`` at a join."""
    options = []
    for x in s1:
        if x == ZERO:
            options.append(((ZERO, ZERO), (ONE_V1, ONE_V1), (ONE_V2, ONE_V2), (TWO, TWO)))
        elif x == TWO:
            options.append(((ZERO, TWO),))
        else:
            options.append(((ZERO, x), (x, TWO)))
    for combo in product(*options):
        yield tuple(c[0] for c in combo), tuple(c[1] for c in combo)


def _grouped(table: DPTable) -> dict[tuple[int, ...], list]:
    groups: dict[tuple[int, ...], list] = defaultdict(list)
    for (s, a, e, m), bits in table.entries.items():
        groups[s].append((a, e, m, bits, bits.bit_count()))
    return groups


def _join_direct(left: DPTable, right: DPTable, out: DPTable, bounds: Bounds | None):
    left_by_s, right_by_s = _grouped(left), _grouped(right)
    shifts: dict[int, list[int]] = {}  # bitset -> its set positions, computed once

    def positions(bits: int) -> list[int]:
        got = shifts.get(bits)
        if got is None:
            got = shifts[bits] = list(_bits(bits))
        return got

    if bounds is None:
        max_e = max_m = max_skipped = None
    else:
        max_e, max_m, max_skipped = bounds.max_e, bounds.max_m, bounds.max_skipped
    introduced = out.introduced
    acc = out.entries
    for s1, lefts in left_by_s.items():
        for s2, s in _compatible_partners(s1):
            rights = right_by_s.get(s2)
            if not rights:
                continue
            for a1, e1, m1, b1, c1 in lefts:
                for a2, e2, m2, b2, c2 in rights:
                    e = e1 + e2
                    m = m1 + m2
                    if max_e is not None and (e > max_e or m > max_m or introduced - e > max_skipped):
                        continue
                    if c1 <= c2:
                        short, long_ = b1, b2
                    else:
                        short, long_ = b2, b1
                    prod = 0
                    for i in positions(short):
                        prod ^= long_ << i
                    key = (s, a1 + a2, e, m)
                    prod ^= acc.get(key, 0)
                    if prod:
                        acc[key] = prod
                    else:
                        acc.pop(key, None)


def _phi_index(s: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(PHI[x] for x in s)


def _slices(table: DPTable, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Odd entries grouped by ``(d, a_gone, e, m, w)``, each group transformed.

    Returns the slice keys as an ``(n, 5)`` array and the transformed
    phi-indicator of each slice as an ``(n, 4**dim)`` array.
    """
    place = 4 ** np.arange(dim - 1, -1, -1) if dim else np.zeros(0, dtype=np.int64)
    cells: dict[tuple[int, int, int, int, int], list[int]] = defaultdict(list)
    for (s, a, e, m), bits in table.entries.items():
        d = sum(RHO[x] for x in s)
        cell = int(sum(PHI[x] * int(p) for x, p in zip(s, place)))
        for w in _bits(bits):
            cells[(d, a, e, m, w)].append(cell)
    keys = np.array(list(cells), dtype=np.int64).reshape(-1, 5)
    ind = np.zeros((len(cells), 4 ** dim), dtype=np.int64)
    for i, group in enumerate(cells.values()):
        ind[i, group] = 1
    hat = z4_transform(ind.reshape((len(cells),) + (4,) * dim), batch=1)
    return keys, hat.reshape(len(cells), 4 ** dim)


# cap on int64 cells held by one block of slice products
_BLOCK_CELLS = 1 << 22
# auto never materialises more slice pairs than this
_MAX_TRANSFORM_PAIRS = 1 << 22


def _join_transform(left: DPTable, right: DPTable, out: DPTable, bounds: Bounds | None):
    """Join via Z_4 products of the phi-encoded slices, filtered by degree sums."""
    dim = len(left.bag)
    if dim > MAX_FAST_DIM:
        raise ValueError(f"bag of size {dim} too large for the transform join")
    n_cells = 4 ** dim
    lkeys, lhat = _slices(left, dim)
    rkeys, rhat = _slices(right, dim)
    if not len(lkeys) or not len(rkeys):
        return
    # slice keys add component-wise, so a mixed-radix code turns targets into sums
    radix = lkeys.max(axis=0) + rkeys.max(axis=0) + 1
    weight = np.ones(5, dtype=np.int64)
    for c in range(3, -1, -1):
        weight[c] = weight[c + 1] * radix[c + 1]
    codes = (lkeys @ weight)[:, None] + (rkeys @ weight)[None, :]
    keep = np.ones(codes.shape, dtype=bool)
    if bounds is not None:
        e = lkeys[:, 2][:, None] + rkeys[:, 2][None, :]
        m = lkeys[:, 3][:, None] + rkeys[:, 3][None, :]
        keep = (e <= bounds.max_e) & (m <= bounds.max_m) & (out.introduced - e <= bounds.max_skipped)
    li, ri = np.nonzero(keep)
    if not len(li):
        return
    order = np.argsort(codes[li, ri], kind="stable")
    li, ri = li[order], ri[order]
    tcodes = codes[li, ri]
    targets, first = np.unique(tcodes, return_index=True)
    group_end = np.append(first[1:], len(tcodes))

    # per cell: its degree sum and its labels, for decoding hits
    grid = np.array(list(product(range(4), repeat=dim)), dtype=np.int64).reshape(n_cells, dim)
    rho_of_phi = np.array([RHO[_PHI_INV[x]] for x in range(4)])
    cell_rho = rho_of_phi[grid].sum(axis=1)
    cell_labels = [tuple(_PHI_INV[int(x)] for x in row) for row in grid]

    pair_step = max(1, _BLOCK_CELLS // n_cells)
    t0 = 0
    while t0 < len(targets):
        # a block of whole targets whose pairs fit the cap (at least one target)
        t1 = max(t0 + 1, int(np.searchsorted(group_end, first[t0] + pair_step, side="right")))
        acc = np.zeros((t1 - t0, n_cells), dtype=np.int64)
        lo, hi = first[t0], group_end[t1 - 1]
        for p0 in range(lo, hi, pair_step):
            p1 = min(p0 + pair_step, hi)
            prod = lhat[li[p0:p1]] * rhat[ri[p0:p1]] % MODULUS
            local = np.searchsorted(targets[t0:t1], tcodes[p0:p1])
            starts = np.flatnonzero(np.r_[True, local[1:] != local[:-1]])
            acc[local[starts]] += np.add.reduceat(prod, starts, axis=0)
            acc[local[starts]] %= MODULUS
        counts = z4_inverse(acc.reshape((t1 - t0,) + (4,) * dim), batch=1).reshape(t1 - t0, n_cells) & 1
        block = targets[t0:t1]
        decoded = (block[:, None] // weight[None, :]) % radix[None, :]
        hits_t, hits_c = np.nonzero(counts.astype(bool) & (cell_rho[None, :] == decoded[:, :1]))
        for ti, ci in zip(hits_t.tolist(), hits_c.tolist()):
            _, a, e, m, w = decoded[ti].tolist()
            out._add((cell_labels[ci], a, e, m), 1 << w, None)
        t0 = t1


def dp_join(left: DPTable, right: DPTable, bounds: Bounds | None = None, strategy: str = "auto") -> DPTable:
    """Combine two children with identical bags.

    ``strategy`` is ``"direct"`` (enumerate compatible label pairs),
    ``"transform"`` (Z_4 products over (d, a, e, m, w) slices) or ``"auto"``.
    """
    if left.bag != right.bag:
        raise ValueError(f"join of different bags {left.bag} and {right.bag}")
    out = DPTable(left.bag, introduced=left.introduced + right.introduced)
    if strategy == "auto":
        strategy = _pick_join(left, right)
    if strategy == "direct":
        _join_direct(left, right, out, bounds)
    elif strategy == "transform":
        if _transform_overflows(left, right):
            raise ValueError("slice counts too large for exact parity recovery")
        _join_transform(left, right, out, bounds)
    else:
        raise ValueError(f"unknown join strategy {strategy!r}")
    return out


def _transform_overflows(left: DPTable, right: DPTable) -> bool:
    pairs = min(len(left), len(right))
    return pairs * 4 ** len(left.bag) >= MODULUS


def _pick_join(left: DPTable, right: DPTable) -> str:
    dim = len(left.bag)
    if dim <= 3 or dim > MAX_FAST_DIM:
        return "direct"
    n_left = _slice_count(left)
    n_right = _slice_count(right)
    if n_left * n_right > _MAX_TRANSFORM_PAIRS:
        return "direct"
    transform_cost = n_left * n_right * 4 ** dim
    direct_cost = len(left) * len(right)
    if transform_cost < direct_cost and not _transform_overflows(left, right):
        return "transform"
    return "direct"


def _slice_count(table: DPTable) -> int:
    """Distinct ``(d, a, e, m, w)`` slices, without expanding the weight bits."""
    union: dict[tuple[int, int, int, int], int] = defaultdict(int)
    for (s, a, e, m), bits in table.entries.items():
        union[(sum(RHO[x] for x in s), a, e, m)] |= bits
    return sum(bits.bit_count() for bits in union.values())


def key_limits(n: int) -> tuple[int, int, int, int]:
    """Maxima of ``(a, e, m, w)`` for an ``n``-vertex graph."""
    return n, n * n, n * n, 4 * n ** 4


def table_bound_violations(table: DPTable, n: int) -> list[tuple]:
    """Keys of ``table`` that leave the ``key_limits`` box (or go negative)."""
    limits = key_limits(n)
    bad = []
    for (s, a_gone, e, m), bits in table.entries.items():
        a = a_gone + sum(1 for x in s if x != ZERO)
        key = (a, e, m, bits.bit_length() - 1)
        if a_gone < 0 or min(key) < 0 or any(x > top for x, top in zip(key, limits)):
            bad.append((*key, s))
    return bad


def root_check(root: DPTable, edge_count: int, k: int) -> bool:
    """Odd parity at some ``(a, |E|-k, a-|E|+k, w, {})``."""
    if root.bag:
        raise ValueError("root bag must be empty")
    e = edge_count - k
    if e < 0:
        return False
    for (_, a, e_key, m), bits in root.entries.items():
        if e_key == e and m == a - e and m >= 0 and bits:
            return True
    return False


def feasible_budgets(root: DPTable, edge_count: int) -> list[int]:
    """Every ``k`` whose root check succeeds, read off one full table."""
    return sorted(k for k in range(edge_count + 1) if root_check(root, edge_count, k))


@dataclass
class DPTrace:
    sizes: list[tuple[str, int, int]] = field(default_factory=list)  # (kind, bag size, entries)

    @property
    def peak(self) -> int:
        return max((n for _, _, n in self.sizes), default=0)


def run_dp(g: Graph, ntd: NiceTreeDecomposition, weights: WeightAssignment, k: int | None = None,
           join: str = "auto", keep_tables: bool = False, trace: DPTrace | None = None):
    """Evaluate every node bottom-up.

    With ``k`` given, entries that can no longer reach the root key for that
    budget are dropped. Returns the root table, or all tables when
    ``keep_tables`` is set.
    """
    bounds = None
    if k is not None:
        target_e = g.m - k
        bounds = Bounds(max_e=target_e, max_m=max(g.n - target_e, -1), max_skipped=k)
    heaviest = sum(weights.edge.values()) + sum(weights.marker.values())
    if heaviest > key_limits(g.n)[3]:
        raise ValueError("weights exceed the 4n^4 key envelope")
    tables: list[DPTable | None] = [None] * len(ntd.nodes)
    for i, node in enumerate(ntd.nodes):
        kids = [tables[c] for c in node.children]
        if node.kind == NodeKind.LEAF:
            t = dp_leaf()
        elif node.kind == NodeKind.INTRODUCE_VERTEX:
            t = dp_introduce_vertex(kids[0], node.vertex)
        elif node.kind == NodeKind.INTRODUCE_EDGE:
            t = dp_introduce_edge(kids[0], g.edges[node.edge], node.edge, weights, bounds)
        elif node.kind == NodeKind.FORGET:
            t = dp_forget(kids[0], node.vertex, bounds)
        else:
            t = dp_join(kids[0], kids[1], bounds, join)
        tables[i] = t
        if trace is not None:
            trace.sizes.append((node.kind.value, len(node.bag), len(t)))
        if not keep_tables:
            for c in node.children:
                tables[c] = None
    if keep_tables:
        return tables
    return tables[ntd.root]


def tw_copath_decide(g: Graph, k: int, ntd: NiceTreeDecomposition | None = None,
                     weights: WeightAssignment | None = None, seed=None, join: str = "auto",
                     trace: DPTrace | None = None, check: bool = False) -> bool:
    """One randomized run: ``True`` is always correct, ``False`` may be wrong w.p. <= 1/3."""
    if k < 0 or k > g.m:
        return False
    if g.m == 0:
        return k == 0
    if ntd is None:
        ntd = nice_decomposition(g)
    elif check:
        problems = validate_nice(ntd, g)
        if problems:
            raise ValueError(f"invalid nice decomposition: {problems[:3]}")
    if weights is None:
        weights = sample_weights(g, seed)
    root = run_dp(g, ntd, weights, k=k, join=join, trace=trace)
    return root_check(root, g.m, k)


def describe_labels(s: tuple[int, ...]) -> str:
    return ",".join(LABEL_NAMES[x] for x in s)
