"""End-to-end augmentation: ROOTED(R0), rogue elimination, iterative rounding."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Mapping

from .errors import (
    BudgetExceeded, GuaranteeViolated, Infeasible, RegimeViolation, RestartBudgetExceeded,
)
from .graph import Edge, Graph, VertexCut, edge, find_deficient_pair, is_k_connected, vertex_cut
from .instance import Instance
from .lp import solve_lpvc
from .oracle import exact_opt
from .outconnect import rooted
from .rogue import compute_B
from .rounding import iterative_round

Mode = Literal["guaranteed", "best-effort"]
Branch = Literal["auto", "small", "large"]


def regime_threshold(k: int) -> int:
    """Smallest n for which the 6-approximation is guaranteed."""
    return k ** 3 * (k - 1) + k


def large_threshold(k: int) -> int:
    """Smallest n for which the B-set branch is used."""
    return k ** 4 * (k - 1) + k


def restart_budget(k: int) -> int:
    return k ** 3 * (k - 1) - k


def _infinite(c) -> bool:
    return isinstance(c, float) and math.isinf(c)


def _q(v: Fraction | None) -> str:
    return "none" if v is None else f"{v.numerator}/{v.denominator}"


def _nodes(S) -> str:
    return " ".join(map(str, sorted(S))) if S else "-"


def _edges(F) -> str:
    return " ".join(f"{u}-{v}" for u, v in sorted(F)) if F else "-"


@dataclass(frozen=True)
class PipelineReport:
    n: int
    k: int
    mode: str
    branch: str
    guaranteed: bool
    R0: frozenset[int]
    R1: frozenset[int]
    F0: frozenset[Edge]
    F1: frozenset[Edge]
    F2: frozenset[Edge]
    cost0: Fraction
    cost1: Fraction
    cost2: Fraction
    restarts: int
    forbidden_set_final: frozenset[int]
    certificates: tuple[tuple[int, int, int], ...]
    lp_bound: Fraction | None = None
    fallback: str | None = None
    trace: tuple[str, ...] = ()

    @property
    def edges(self) -> frozenset[Edge]:
        return self.F0 | self.F1 | self.F2

    @property
    def cost(self) -> Fraction:
        return self.cost0 + self.cost1 + self.cost2

    def to_text(self) -> str:
        rows = [
            ("n", self.n), ("k", self.k), ("mode", self.mode), ("branch", self.branch),
            ("guaranteed", str(self.guaranteed).lower()), ("fallback", self.fallback or "none"),
            ("R0", _nodes(self.R0)), ("R1", _nodes(self.R1)),
            ("restarts", self.restarts), ("forbidden", _nodes(self.forbidden_set_final)),
            ("F0", _edges(self.F0)), ("cost0", _q(self.cost0)),
            ("F1", _edges(self.F1)), ("cost1", _q(self.cost1)),
            ("F2", _edges(self.F2)), ("cost2", _q(self.cost2)),
            ("cost", _q(self.cost)), ("lp_bound", _q(self.lp_bound)),
            ("certified_pairs", len(self.certificates)),
            ("min_pair_connectivity", min((c for _, _, c in self.certificates), default="none")),
        ]
        return "".join(f"{key} {val}\n" for key, val in rows)


def _choose(eligible: Iterable[int], k: int, rng: random.Random | None) -> frozenset[int]:
    pool = sorted(eligible)
    if len(pool) < k:
        raise ValueError("not enough eligible terminals")
    if rng is None:
        return frozenset(pool[:k])
    return frozenset(rng.sample(pool, k))


def certify(G: Graph, k: int) -> tuple[tuple[int, int, int], ...]:
    """Local connectivity of every nonadjacent pair; each entry is ``(u, w, paths)``."""
    out = []
    for u, w in G.non_edges():
        out.append((u, w, vertex_cut(G, u, w).value))
    return tuple(out)


def augment(G: Graph, k: int, costs: Mapping[Edge, object], mode: Mode = "guaranteed",
            R0: Iterable[int] | None = None, seed: int | None = None,
            branch: Branch = "auto", oracle_candidates: int = 20) -> PipelineReport:
    """Find ``F`` with ``G + F`` k-connected.

    In guaranteed mode the graph must have at least ``k^3 (k-1) + k`` nodes
    and the cost is at most six times the optimum. Best-effort mode runs on
    any size and, if the restart loop runs dry, solves small instances exactly.
    ``branch`` forces the rogue-elimination strategy (default picks by n).
    """
    if mode not in ("guaranteed", "best-effort"):
        raise ValueError(f"unknown mode {mode!r}")
    costs = {edge(*e): Fraction(c) for e, c in costs.items() if not G.has_edge(*e) and not _infinite(c)}
    n = G.n
    if n < k + 1 or not is_k_connected(G.with_edges(costs), k):
        raise Infeasible(f"no purchasable edge set makes the graph {k}-connected")
    in_regime = n >= regime_threshold(k)
    if mode == "guaranteed" and not in_regime:
        raise RegimeViolation(f"guaranteed mode needs n >= {regime_threshold(k)} for k={k}, got {n}")
    if branch == "auto":
        branch = "large" if n >= large_threshold(k) else "small"
    rng = random.Random(seed) if seed is not None else None
    lines: list[str] = []

    def report(**kw) -> PipelineReport:
        final = G.with_edges(kw["F0"] | kw["F1"] | kw["F2"])
        base = dict(n=n, k=k, mode=mode, branch=branch, guaranteed=in_regime and kw.get("fallback") is None,
                    lp_bound=lp_bound, trace=tuple(lines), certificates=certify(final, k))
        base.update(kw)
        return PipelineReport(**base)

    lp_bound = solve_lpvc(G, k, costs).objective if costs else Fraction(0)
    empty: frozenset[Edge] = frozenset()
    if is_k_connected(G, k):
        R = frozenset(R0) if R0 is not None else frozenset()
        return report(R0=R, R1=frozenset(), F0=empty, F1=empty, F2=empty, cost0=Fraction(0),
                      cost1=Fraction(0), cost2=Fraction(0), restarts=0, forbidden_set_final=R)

    R0 = frozenset(R0) if R0 is not None else _choose(G.nodes, k, rng)
    phase0 = rooted(G, costs, R0, k)
    F0 = phase0.edges
    G0 = G.with_edges(F0)
    rest0 = {e: c for e, c in costs.items() if e not in F0}
    lines.append(f"phase0 R0 {_nodes(R0)} added {len(F0)} cost {_q(phase0.cost)}")

    def finish(R1, F1, cost1, rounding, restarts, S):
        lines.extend(rounding.trace)
        F2 = frozenset(rounding.edges)
        return report(R0=R0, R1=R1, F0=F0, F1=F1, F2=F2, cost0=phase0.cost, cost1=cost1,
                      cost2=rounding.cost, restarts=restarts, forbidden_set_final=S)

    def exact_fallback(S, restarts, why):
        lines.append(f"fallback exact ({why})")
        try:
            res = exact_opt(Instance(G, k, costs), max_candidates=oracle_candidates)
        except BudgetExceeded as exc:
            raise RestartBudgetExceeded(f"{why}; exact fallback unavailable: {exc}") from exc
        return report(R0=R0, R1=frozenset(), F0=empty, F1=empty, F2=frozenset(res.edges),
                      cost0=Fraction(0), cost1=Fraction(0), cost2=res.cost, restarts=restarts,
                      forbidden_set_final=S, fallback="exact")

    if branch == "large":
        B = compute_B(G0, k).B
        eligible = set(G.nodes) - B
        lines.append(f"large B {_nodes(B)}")
        if len(eligible) < k:
            if mode == "guaranteed":
                raise GuaranteeViolated(f"|V - B| = {len(eligible)} < k = {k}")
            return exact_fallback(frozenset(R0), 0, "B leaves fewer than k nodes")
        R1 = _choose(eligible, k, rng)
        phase1 = rooted(G0, rest0, R1, k)
        G1 = G0.with_edges(phase1.edges)
        rest1 = {e: c for e, c in rest0.items() if e not in phase1.edges}
        lines.append(f"phase1 R1 {_nodes(R1)} added {len(phase1.edges)} cost {_q(phase1.cost)}")
        out = iterative_round(G1, k, rest1)
        if out.success:
            return finish(R1, phase1.edges, phase1.cost, out, 0, frozenset(R0))
        if mode == "guaranteed":
            raise GuaranteeViolated(f"rounding stalled on rogue set {sorted(out.rogue)} after B-set phase")
        lines.extend(out.trace)
        lines.append(f"stalled rogue {_nodes(out.rogue)}; switching to restart loop")
        S = frozenset(R0) | out.rogue
    else:
        S = frozenset(R0)

    budget = restart_budget(k)
    restarts = 0
    while True:
        eligible = set(G.nodes) - S
        if len(eligible) < k:
            if mode == "guaranteed":
                raise RestartBudgetExceeded(f"forbidden set {sorted(S)} leaves fewer than k nodes")
            return exact_fallback(S, restarts, "no eligible terminal set left")
        R1 = _choose(eligible, k, rng)
        phase1 = rooted(G0, rest0, R1, k)
        G1 = G0.with_edges(phase1.edges)
        rest1 = {e: c for e, c in rest0.items() if e not in phase1.edges}
        lines.append(f"phase1 R1 {_nodes(R1)} added {len(phase1.edges)} cost {_q(phase1.cost)}")
        out = iterative_round(G1, k, rest1)
        if out.success:
            return finish(R1, phase1.edges, phase1.cost, out, restarts, S)
        lines.extend(out.trace)
        lines.append(f"restart {restarts + 1} rogue {_nodes(out.rogue)}")
        if not out.rogue - S:
            raise GuaranteeViolated(f"rogue set {sorted(out.rogue)} does not grow S = {sorted(S)}")
        S = S | out.rogue
        restarts += 1
        if restarts > budget and mode == "guaranteed":
            raise RestartBudgetExceeded(f"more than {budget} restarts")


@dataclass(frozen=True)
class VerifyReport:
    connected: bool
    cost: Fraction | None
    witness: VertexCut | None
    lp_bound: Fraction | None
    opt: Fraction | None
    unpriced: tuple[Edge, ...] = ()

    @property
    def ratio(self) -> Fraction | None:
        if not self.connected or self.cost is None or self.opt is None:
            return None
        if self.opt == 0:
            return Fraction(1) if self.cost == 0 else None
        return self.cost / self.opt

    def to_text(self) -> str:
        rows = [
            ("connected", str(self.connected).lower()),
            ("cost", _q(self.cost)),
            ("unpriced", _edges(self.unpriced)),
            ("witness", "none" if self.witness is None else
             f"{_nodes(self.witness.source_side)} | {_nodes(self.witness.cut_nodes)} | {_nodes(self.witness.sink_side)}"),
            ("lp_bound", _q(self.lp_bound)),
            ("opt", _q(self.opt)),
            ("ratio", _q(self.ratio)),
        ]
        return "".join(f"{key} {val}\n" for key, val in rows)


def verify(G: Graph, k: int, F: Iterable[Edge], costs: Mapping[Edge, object],
           oracle_candidates: int | None = 20) -> VerifyReport:
    """Check ``G + F`` for k-connectivity and compare its cost with LP and exact bounds.

    The exact optimum is computed only when the candidate count fits
    ``oracle_candidates`` (None disables it).
    """
    costs = {edge(*e): Fraction(c) for e, c in costs.items() if not G.has_edge(*e) and not _infinite(c)}
    F = {edge(*e) for e in F} - set(G.edges)
    unpriced = tuple(sorted(e for e in F if e not in costs))
    cost = None if unpriced else sum((costs[e] for e in F), Fraction(0))
    H = G.with_edges(F)
    witness = find_deficient_pair(H, k) if H.n >= k + 1 else None
    connected = H.n >= k + 1 and witness is None
    feasible = G.n >= k + 1 and is_k_connected(G.with_edges(costs), k)
    lp_bound = opt = None
    if feasible:
        lp_bound = solve_lpvc(G, k, costs).objective if costs else Fraction(0)
        if oracle_candidates is not None and len(costs) <= oracle_candidates:
            opt = exact_opt(Instance(G, k, costs), max_candidates=oracle_candidates).cost
    return VerifyReport(connected, cost, witness, lp_bound, opt, unpriced)
