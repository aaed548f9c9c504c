"""Rogue sets: the potential ``h``, its minimisation, the B-set and rogue extraction.

``h(X) = |X| + (k-1) * gamma(X)`` is minimised over sets containing a fixed
node as a closure problem: every node carries two 0/1 labels, ``a_v`` (v in
X) and ``b_v`` (v in X or its neighbourhood), constrained by ``a_v <= b_v``
and ``a_u <= b_w`` for every edge ``uw``. The cost ``(2-k) a_v + (k-1) b_v``
sums to ``h`` on the optimal labelling, so one s-t min cut gives the
minimum, and the maximal source side gives the largest minimiser.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import NoRogueFound, SizeLimit
from .flow import FlowNetwork
from .graph import (
    DEFAULT_ENUMERATION_BUDGET, Edge, Graph, deficient_sets, gamma, is_deficient, mask_to_set,
    subset_tables, vertex_cut,
)
from .lp import HALF, FractionalSolution


def h(G: Graph, k: int, X) -> int:
    X = frozenset(X)
    return len(X) + (k - 1) * gamma(G, X)


@dataclass(frozen=True)
class HValue:
    set: frozenset[int]
    value: int


@dataclass(frozen=True)
class BReport:
    B: frozenset[int]
    A: frozenset[int]
    minimizers: tuple[HValue, ...] = ()


def min_h_containing(G: Graph, k: int, v: int) -> HValue:
    """Minimum of h over sets containing v, with the largest minimiser."""
    n = G.n
    s, t = 2 * n, 2 * n + 1
    net = FlowNetwork(2 * n + 2)
    inf = n * (k + 2) + 1
    offset = 0
    # a_u is node u, b_u is node n + u; source side means label 1
    for u in range(n):
        wa, wb = 2 - k, k - 1
        for node, w in ((u, wa), (n + u, wb)):
            if w > 0:
                net.add_arc(node, t, w)
            elif w < 0:
                net.add_arc(s, node, -w)
                offset += -w
        net.add_arc(u, n + u, inf)
        for w in G.adj(u):
            net.add_arc(u, n + w, inf)
    net.add_arc(s, v, inf)
    cut = net.max_flow(s, t)
    to_sink = net.sink_side(t)
    X = frozenset(u for u in range(n) if u not in to_sink)
    value = cut - offset
    return HValue(X, value)


def min_h_exhaustive(G: Graph, k: int, v: int, tables=None) -> HValue:
    """Brute-force oracle: scan every superset of {v} (n <= 20)."""
    nb, gsize = tables if tables is not None else subset_tables(G)
    idx = np.arange(1 << G.n, dtype=np.int64)
    sizes = _popcounts(G.n)
    hv = sizes + (k - 1) * gsize
    members = idx[(idx >> v) & 1 == 1]
    vals = hv[members]
    best = int(vals.min())
    union = int(np.bitwise_or.reduce(members[vals == best]))
    return HValue(mask_to_set(union), best)


_POP_CACHE: dict[int, np.ndarray] = {}


def _popcounts(n: int) -> np.ndarray:
    if n not in _POP_CACHE:
        pc = np.zeros(1 << n, dtype=np.int64)
        for v in range(n):
            half = 1 << v
            pc[half:2 * half] = pc[:half] + 1
        _POP_CACHE[n] = pc
    return _POP_CACHE[n]


def compute_B(G: Graph, k: int) -> BReport:
    """Union of all sets with h <= k(k-1), built from per-node minimisations."""
    threshold = k * (k - 1)
    A: set[int] = set()
    B: set[int] = set()
    found = []
    for v in G.nodes:
        if v in A or v in B:
            continue
        hv = min_h_containing(G, k, v)
        if hv.value > threshold:
            A.add(v)
        else:
            B |= hv.set
            found.append(hv)
    return BReport(frozenset(B), frozenset(A), tuple(found))


def low_h_union_exhaustive(G: Graph, k: int) -> frozenset[int]:
    nb, gsize = subset_tables(G)
    hv = _popcounts(G.n) + (k - 1) * gsize
    idx = np.arange(1 << G.n, dtype=np.int64)
    low = idx[(hv <= k * (k - 1)) & (idx != 0)]
    return mask_to_set(int(np.bitwise_or.reduce(low))) if low.size else frozenset()


def is_rogue(G: Graph, k: int, X) -> bool:
    X = frozenset(X)
    return 0 < len(X) < k and is_deficient(G, k, X)


def enumerate_rogue_sets(G: Graph, k: int,
                         budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[frozenset[int]]:
    return deficient_sets(G, k, k - 1, budget)


def is_rogue_free(G: Graph, k: int) -> bool:
    return not enumerate_rogue_sets(G, k)


def rogue_union(G: Graph, k: int) -> frozenset[int]:
    out: set[int] = set()
    for X in enumerate_rogue_sets(G, k):
        out |= X
    return frozenset(out)


def find_rogue_from_fractional(G: Graph, k: int,
                               x: FractionalSolution | Mapping[Edge, Fraction]) -> frozenset[int] | None:
    """Rogue set of G read off the minimal min cuts of the fractional graph ``G + x``.

    Returns None when some ``x_e >= 1/2`` (the rounding step applies instead).
    """
    values = x.values if isinstance(x, FractionalSolution) else x
    if any(v >= HALF for v in values.values()):
        return None
    for u, w in G.non_edges():
        for a, b in ((u, w), (w, u)):
            cut = vertex_cut(G, a, b, values)
            if is_rogue(G, k, cut.source_side):
                return cut.source_side
    raise NoRogueFound("no minimal minimum cut side is a rogue set")


def deficient_masks(G: Graph, k: int, tables=None) -> tuple[np.ndarray, np.ndarray]:
    """Bitmasks of all deficient sets and their neighbourhood masks."""
    nb, gsize = tables if tables is not None else subset_tables(G)
    full = (1 << G.n) - 1
    idx = np.arange(1 << G.n, dtype=np.int64)
    rest = full & ~(idx | nb)
    ok = (idx != 0) & (gsize < k) & (rest != 0)
    return idx[ok], nb[ok]


def independent_deficient_pair(G: Graph, k: int, max_n: int = 14):
    """Two independent deficient set-pairs, as ``(D, U0)`` masks, or None.

    Independence means some piece ``D`` of one pair avoids both pieces of the
    other. With ``U0`` disjoint from ``D``, the best partner piece is
    ``U0* - D``, so the pair exists iff ``gamma(U0) + |U0* & D| < k`` and
    ``U0* - D`` is nonempty.
    """
    if G.n > max_n:
        raise SizeLimit(f"independence check on n={G.n} exceeds max_n={max_n}")
    tables = subset_tables(G)
    sets, nbs = deficient_masks(G, k, tables)
    if sets.size == 0:
        return None
    full = (1 << G.n) - 1
    gs = tables[1][sets]
    stars = full & ~(sets | nbs)
    pc = _popcounts(G.n)
    for D in sets.tolist():
        ok = (sets & D) == 0
        inter = stars & D
        cond = ok & (gs + pc[inter] < k) & ((stars & ~D) != 0)
        hit = np.flatnonzero(cond)
        if hit.size:
            return D, int(sets[hit[0]])
    return None


def is_independence_free(G: Graph, k: int, max_n: int = 14) -> bool:
    return independent_deficient_pair(G, k, max_n) is None
