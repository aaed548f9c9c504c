"""Rooted k-outconnectivity: exact directed solver and the undirected ROOTED(R) step.

The directed problem is solved over a cut LP (one family of rows per target
node, separated by node-split max-flow) followed by depth-first
branch-and-bound whenever the LP vertex is fractional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .errors import BadTerminalCount, Infeasible
from .flow import FlowNetwork
from .graph import Edge, Graph, edge
from .simplex import CutLP

Arc = tuple[int, int]


class Digraph:
    """Simple digraph on ``0..n-1`` without self-loops."""

    __slots__ = ("n", "arcs")

    def __init__(self, n: int, arcs: Iterable[Arc] = ()):
        arcs = frozenset((int(a), int(b)) for a, b in arcs)
        for a, b in arcs:
            if a == b or not (0 <= a < n and 0 <= b < n):
                raise ValueError(f"bad arc {(a, b)}")
        self.n = n
        self.arcs = arcs

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={sorted(self.arcs)})"


def _rooted_cut(n: int, r: int, v: int, arcs: Mapping[Arc, int], scale: int, need: int):
    """Max r->v internally-disjoint flow; returns (flow, W, C) where W/C are the
    fully-reached and split nodes of the minimal cut, or None if flow >= need."""
    net = FlowNetwork(2 * n)
    for u in range(n):
        if u != r and u != v:
            net.add_arc(2 * u, 2 * u + 1, scale)
    for (a, b), cap in arcs.items():
        if cap and b != r and a != v:
            net.add_arc(2 * a + 1, 2 * b, cap)
    flow = net.max_flow(2 * r + 1, 2 * v, need)
    if flow >= need:
        return None
    reach = net.source_side(2 * r + 1)
    W = {r} | {u for u in range(n) if u not in (r, v) and 2 * u + 1 in reach}
    C = {u for u in range(n) if u not in W and u != v and 2 * u in reach}
    return flow, W, C


def is_k_outconnected(D: Digraph, r: int, k: int) -> bool:
    # arcs carry capacity 1 so a direct arc r->v counts as a single path
    arcs = {a: 1 for a in D.arcs}
    return all(_rooted_cut(D.n, r, v, arcs, 1, k) is None for v in range(D.n) if v != r)


@dataclass(frozen=True)
class DirectedSolution:
    arcs: frozenset[Arc]
    cost: Fraction
    lp_bound: Fraction
    nodes: int


class _OutLP:
    def __init__(self, D: Digraph, costs: Mapping[Arc, Fraction], r: int, k: int):
        self.D, self.r, self.k = D, r, k
        self.candidates = sorted(a for a in costs if a not in D.arcs and a[1] != r)
        self.index = {a: i for i, a in enumerate(self.candidates)}
        self.costs = [Fraction(costs[a]) for a in self.candidates]
        self.lp = CutLP(self.costs)

    def copy(self) -> "_OutLP":
        c = object.__new__(_OutLP)
        c.__dict__.update(self.__dict__)
        c.lp = self.lp.copy()
        return c

    def values(self) -> dict[Arc, Fraction]:
        x = self.lp.solution()
        return {a: x[i] for i, a in enumerate(self.candidates)}

    def separate(self, y: Mapping[Arc, Fraction]) -> list[tuple[dict[int, int], int]]:
        frac = {a: v for a, v in y.items() if v}
        scale = math.lcm(*(v.denominator for v in frac.values())) if frac else 1
        caps = {a: scale for a in self.D.arcs}
        for a, v in frac.items():
            caps[a] = int(v * scale)
        rows = []
        for v in range(self.D.n):
            if v == self.r:
                continue
            res = _rooted_cut(self.D.n, self.r, v, caps, scale, self.k * scale)
            if res is None:
                continue
            _, W, C = res
            T = set(range(self.D.n)) - W - C
            fixed = sum(1 for a, b in self.D.arcs if a in W and b in T)
            coeffs = {self.index[(a, b)]: 1 for (a, b) in self.candidates if a in W and b in T}
            rows.append((coeffs, self.k - len(C) - fixed))
        return rows

    def solve(self) -> bool:
        while True:
            if not self.lp.solve():
                return False
            rows = self.separate(self.values())
            if not rows:
                return True
            for coeffs, rhs in rows:
                self.lp.add_row(coeffs, rhs)


def solve_directed_outconnectivity(D: Digraph, costs: Mapping[Arc, object], r: int, k: int,
                                   node_limit: int = 100_000) -> DirectedSolution:
    """Minimum-cost set of candidate arcs making ``D`` k-outconnected from ``r``.

    ``D.arcs`` are free; ``costs`` prices the purchasable arcs.
    """
    root = _OutLP(D, costs, r, k)
    if not root.solve():
        raise Infeasible(f"no arc set makes the digraph {k}-outconnected from {r}")
    lp_bound = root.lp.objective
    best: tuple[Fraction, frozenset[Arc]] | None = None
    stack = [root]
    nodes = 0
    while stack:
        node = stack.pop()
        nodes += 1
        if nodes > node_limit:
            raise Infeasible(f"branch-and-bound exceeded {node_limit} nodes")
        bound = node.lp.objective
        if best is not None and bound >= best[0]:
            continue
        y = node.values()
        frac = [a for a in node.candidates if y[a].denominator != 1]
        if not frac:
            chosen = frozenset(a for a in node.candidates if y[a] == 1)
            best = (bound, chosen)
            continue
        a = max(frac, key=lambda a: (y[a], [-t for t in a]))
        j = node.index[a]
        zero, one = node.copy(), node.copy()
        zero.lp.add_row({j: -1}, 0)
        one.lp.add_row({j: 1}, 1)
        for child in (zero, one):
            if child.solve():
                stack.append(child)
    assert best is not None
    return DirectedSolution(best[1], best[0], lp_bound, nodes)


def brute_force_outconnectivity(D: Digraph, costs: Mapping[Arc, object], r: int, k: int):
    """Exhaustive minimum over candidate arc subsets (tiny instances only)."""
    cands = sorted(a for a in costs if a not in D.arcs)
    best = None
    for size in range(len(cands) + 1):
        for subset in combinations(cands, size):
            c = sum((Fraction(costs[a]) for a in subset), Fraction(0))
            if best is not None and c >= best[0]:
                continue
            if is_k_outconnected(Digraph(D.n, D.arcs | set(subset)), r, k):
                best = (c, frozenset(subset))
    if best is None:
        raise Infeasible("no subset is feasible")
    return best


@dataclass(frozen=True)
class RootedResult:
    edges: frozenset[Edge]
    cost: Fraction
    directed: DirectedSolution
    terminals: frozenset[int]


def rooted_digraph(G: Graph, costs: Mapping[Edge, object], R: Iterable[int]):
    """Bidirected graph plus root ``n`` with free arcs to the terminals."""
    root = G.n
    arcs = set()
    for u, v in G.edges:
        arcs.add((u, v))
        arcs.add((v, u))
    for t in R:
        arcs.add((root, t))
    arc_costs = {}
    for e, c in costs.items():
        u, v = edge(*e)
        if G.has_edge(u, v):
            continue
        arc_costs[(u, v)] = c
        arc_costs[(v, u)] = c
    return Digraph(G.n + 1, arcs), arc_costs, root


def rooted(G: Graph, costs: Mapping[Edge, object], R: Iterable[int], k: int) -> RootedResult:
    """ROOTED(R): temporary root joined to R, directed outconnectivity, projection."""
    R = frozenset(R)
    if len(R) != k:
        raise BadTerminalCount(f"expected {k} terminals, got {len(R)}")
    if not R <= set(G.nodes):
        raise ValueError("terminals must be nodes of the graph")
    D, arc_costs, root = rooted_digraph(G, costs, R)
    sol = solve_directed_outconnectivity(D, arc_costs, root, k)
    F = frozenset(edge(a, b) for a, b in sol.arcs if root not in (a, b))
    cost = sum((Fraction(costs[e]) for e in F), Fraction(0))
    return RootedResult(F, cost, sol, R)


__all__ = [
    "Digraph", "DirectedSolution", "RootedResult", "brute_force_outconnectivity",
    "is_k_outconnected", "rooted", "rooted_digraph", "solve_directed_outconnectivity",
]
