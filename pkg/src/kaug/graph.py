"""Undirected simple graphs, neighbourhoods and node cuts.

Node cuts are computed on the usual node-split network: node ``v`` becomes
``v_in -> v_out`` with unit capacity and every edge ``uv`` becomes the two
arcs ``u_out -> v_in`` and ``v_out -> u_in``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

import numpy as np

from .errors import AdjacentTerminals, SizeLimit
from .flow import FlowNetwork

Edge = tuple[int, int]
NodeSet = frozenset

DEFAULT_ENUMERATION_BUDGET = 1 << 22


def edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop at node {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on nodes ``0..n-1``; immutable."""

    __slots__ = ("n", "edges", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 1:
            raise ValueError("a graph needs at least one node")
        normalized = set()
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{n - 1}")
            normalized.add(edge(u, v))
        self.n = n
        self.edges: frozenset[Edge] = frozenset(normalized)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(a) for a in adj)
        self._masks = None

    @property
    def nodes(self) -> range:
        return range(self.n)

    def adj(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges | {edge(*e) for e in extra})

    def non_edges(self) -> list[Edge]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if v not in self._adj[u]]

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency as one bitmask per node."""
        if self._masks is None:
            self._masks = tuple(sum(1 << w for w in a) for a in self._adj)
        return self._masks

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


@dataclass(frozen=True)
class VertexCut:
    value: object
    cut_nodes: frozenset[int]
    source_side: frozenset[int]
    sink_side: frozenset[int]


def neighbors(G: Graph, U: Iterable[int]) -> frozenset[int]:
    U = frozenset(U)
    out = set()
    for u in U:
        out |= G.adj(u)
    return frozenset(out - U)


def gamma(G: Graph, U: Iterable[int]) -> int:
    return len(neighbors(G, U))


def outside(G: Graph, U: Iterable[int]) -> frozenset[int]:
    U = frozenset(U)
    return frozenset(G.nodes) - U - neighbors(G, U)


def is_deficient(G: Graph, k: int, U: Iterable[int]) -> bool:
    U = frozenset(U)
    return bool(U) and gamma(G, U) < k and bool(outside(G, U))


def vertex_cut(G: Graph, u: int, w: int, x: Mapping[Edge, Fraction] | None = None,
               below=None) -> VertexCut | None:
    """Minimum u-w node cut, optionally with extra fractional edges ``x``.

    The value is ``min |C| + x(delta(U0, U1))`` over partitions ``U0 + C + U1``
    of the nodes with ``u in U0``, ``w in U1`` and no graph edge between
    ``U0`` and ``U1``. The returned source side is the inclusion-minimal one.
    If ``below`` is given and the value is at least ``below``, returns None
    without finishing the flow computation.
    """
    if G.has_edge(u, w):
        raise AdjacentTerminals(f"nodes {u} and {w} are adjacent")
    if u == w:
        raise ValueError("terminals must differ")
    n = G.n
    frac = {e: Fraction(val) for e, val in (x or {}).items() if val}
    scale = math.lcm(*(f.denominator for f in frac.values())) if frac else 1
    big = scale * (n + 1 + math.ceil(sum(frac.values(), Fraction(0)))) + 1
    net = FlowNetwork(2 * n)
    for v in range(n):
        if v != u and v != w:
            net.add_arc(2 * v, 2 * v + 1, scale)
    for a, b in G.edges:
        net.add_arc(2 * a + 1, 2 * b, big)
        net.add_arc(2 * b + 1, 2 * a, big)
    for (a, b), val in frac.items():
        c = int(val * scale)
        net.add_arc(2 * a + 1, 2 * b, c)
        net.add_arc(2 * b + 1, 2 * a, c)
    limit = None if below is None else math.ceil(Fraction(below) * scale)
    flow = net.max_flow(2 * u + 1, 2 * w, limit)
    if limit is not None and flow >= limit:
        return None
    reach = net.source_side(2 * u + 1)
    source = {u}
    cut = set()
    for v in range(n):
        if v in (u, w):
            continue
        if 2 * v + 1 in reach:
            source.add(v)
        elif 2 * v in reach:
            cut.add(v)
    sink = frozenset(range(n)) - source - cut
    value = flow if scale == 1 else Fraction(flow, scale)
    return VertexCut(value, frozenset(cut), frozenset(source), sink)


def min_vertex_cut(G: Graph, u: int, w: int) -> VertexCut:
    """Menger cut between nonadjacent u and w; value = number of disjoint paths."""
    return vertex_cut(G, u, w)


def is_k_connected(G: Graph, k: int) -> bool:
    if k <= 0:
        return True
    if G.n < k + 1:
        return False
    if any(G.degree(v) < k for v in G.nodes):
        return False
    for u, w in G.non_edges():
        if vertex_cut(G, u, w, below=k) is not None:
            return False
    return True


def find_deficient_pair(G: Graph, k: int) -> VertexCut | None:
    """A nonadjacent pair's minimum cut of size < k, or None when G is k-connected."""
    for u, w in G.non_edges():
        cut = vertex_cut(G, u, w, below=k)
        if cut is not None:
            return cut
    return None


def deficient_sets(G: Graph, k: int, max_size: int,
                   budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[frozenset[int]]:
    """All deficient sets of size at most ``max_size`` (small graphs only)."""
    max_size = min(max_size, G.n)
    work = sum(math.comb(G.n, s) for s in range(1, max_size + 1))
    if work > budget:
        raise SizeLimit(f"{work} subsets exceed the enumeration budget {budget}")
    found = []
    full = (1 << G.n) - 1
    masks = G.masks
    for size in range(1, max_size + 1):
        for combo in combinations(range(G.n), size):
            m = 0
            nb = 0
            for v in combo:
                m |= 1 << v
                nb |= masks[v]
            nb &= ~m
            if nb.bit_count() < k and full & ~(m | nb):
                found.append(frozenset(combo))
    return found


def subset_tables(G: Graph, max_n: int = 20) -> tuple[np.ndarray, np.ndarray]:
    """Neighbourhood masks and their sizes for all 2^n subsets, indexed by bitmask."""
    n = G.n
    if n > max_n:
        raise SizeLimit(f"subset tables for n={n} exceed max_n={max_n}")
    nb = np.zeros(1 << n, dtype=np.int64)
    for v, m in enumerate(G.masks):
        half = 1 << v
        nb[half:2 * half] = nb[:half] | m
    idx = np.arange(1 << n, dtype=np.int64)
    nb &= ~idx
    return nb, popcount(nb)


def popcount(arr: np.ndarray) -> np.ndarray:
    out = np.zeros(arr.shape, dtype=np.int64)
    a = arr.copy()
    while np.any(a):
        out += a & 1
        a >>= 1
    return out


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def set_to_mask(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << v
    return m
