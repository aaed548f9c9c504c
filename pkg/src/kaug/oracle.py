"""Exact optimum of k-connectivity augmentation on small instances.

Two independent routes: LP-based branch-and-bound (cut LP bound, branching
on fractional edges) and plain exhaustion of edge subsets in cost order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Literal

from .errors import BudgetExceeded, Infeasible
from .graph import Edge, is_k_connected
from .instance import Instance
from .lp import LPVCSolver


@dataclass(frozen=True)
class OracleResult:
    cost: Fraction | None
    edges: frozenset[Edge]
    explored: int
    mode: str

    @property
    def feasible(self) -> bool:
        return self.cost is not None


def exact_opt(inst: Instance, max_candidates: int = 25,
              mode: Literal["auto", "bnb", "exhaustive"] = "auto",
              exhaustive_max: int = 10, node_limit: int = 200_000) -> OracleResult:
    m = len(inst.costs)
    if m > max_candidates:
        raise BudgetExceeded(f"{m} candidate edges exceed the oracle budget {max_candidates}")
    if mode == "exhaustive" or (mode == "auto" and m <= exhaustive_max):
        if m > 20:
            raise BudgetExceeded(f"{m} candidates is too many for exhaustion")
        return _exhaustive(inst)
    return _branch_and_bound(inst, node_limit)


def _exhaustive(inst: Instance) -> OracleResult:
    G, k = inst.graph, inst.k
    cands = inst.candidates
    if not is_k_connected(inst.full_graph(), k):
        return OracleResult(None, frozenset(), 1, "exhaustive")
    subsets = []
    for size in range(len(cands) + 1):
        for combo in combinations(range(len(cands)), size):
            subsets.append((sum((inst.costs[cands[i]] for i in combo), Fraction(0)), combo))
    subsets.sort()
    explored = 0
    for cost, combo in subsets:
        explored += 1
        F = [cands[i] for i in combo]
        if is_k_connected(G.with_edges(F), k):
            return OracleResult(cost, frozenset(F), explored, "exhaustive")
    raise AssertionError("full candidate set was k-connected but no subset was")


def _branch_and_bound(inst: Instance, node_limit: int) -> OracleResult:
    try:
        root = LPVCSolver(inst.graph, inst.k, inst.costs)
        root.solve()
    except Infeasible:
        return OracleResult(None, frozenset(), 1, "bnb")
    best: tuple[Fraction, frozenset[Edge]] | None = None
    stack = [root]
    explored = 0
    while stack:
        node = stack.pop()
        explored += 1
        if explored > node_limit:
            raise BudgetExceeded(f"branch-and-bound exceeded {node_limit} nodes")
        bound = node.lp.objective
        if best is not None and bound >= best[0]:
            continue
        x = node.current()
        frac = [e for e in node.candidates if x[e].denominator != 1]
        if not frac:
            best = (bound, frozenset(e for e in node.candidates if x[e] == 1))
            continue
        e = max(frac, key=lambda e: (x[e], -node.costs[e], [-t for t in e]))
        for value in (0, 1):
            child = node.fix(e, value)
            try:
                child.solve()
            except Infeasible:
                continue
            if best is None or child.lp.objective < best[0]:
                stack.append(child)
    assert best is not None
    return OracleResult(best[0], best[1], explored, "bnb")
