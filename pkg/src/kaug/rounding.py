"""Iterative rounding with the one-half rule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Literal, Mapping

from .errors import GuaranteeViolated, IterationLimit
from .graph import Edge, Graph, edge, is_k_connected
from .lp import HALF, max_fractional_edge, solve_lpvc
from .rogue import find_rogue_from_fractional, is_rogue


@dataclass
class RoundingOutcome:
    status: Literal["success", "stalled"]
    edges: list[Edge]
    cost: Fraction
    rogue: frozenset[int] | None = None
    first_lp: Fraction | None = None
    trace: list[str] = field(default_factory=list)
    maxima: list[Fraction] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.status == "success"


def _q(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def iterative_round(G: Graph, k: int, costs: Mapping[Edge, object], one_edge: bool = False,
                    max_iterations: int | None = None,
                    on_iteration: Callable[[Graph, list[Edge]], None] | None = None) -> RoundingOutcome:
    """Round every ``x_e >= 1/2`` of a basic optimum into the graph until k-connected.

    Stops with ``status="stalled"`` and a rogue set when a basic optimum has
    all values below one half. ``on_iteration`` sees the working graph and
    the batch about to be added (used by property checks).
    """
    costs = {edge(*e): Fraction(c) for e, c in costs.items() if not _infinite(c)}
    start = G
    working = G
    bought: list[Edge] = []
    trace: list[str] = []
    maxima: list[Fraction] = []
    first_lp = None
    cap = max_iterations if max_iterations is not None else len(costs) + 1
    it = 0
    while not is_k_connected(working, k):
        if it >= cap:
            raise IterationLimit(f"rounding exceeded {cap} iterations")
        remaining = {e: c for e, c in costs.items() if not working.has_edge(*e)}
        lp = solve_lpvc(working, k, remaining)
        if first_lp is None:
            first_lp = lp.objective
        x = lp.x
        top_edge, top = max_fractional_edge(x)
        maxima.append(top)
        if top < HALF:
            trace.append(f"iter {it} obj {_q(lp.objective)} added 0 max {_q(top)}")
            X = find_rogue_from_fractional(working, k, x)
            if X is None or not is_rogue(start, k, X):
                raise GuaranteeViolated(f"extracted set {X} is not rogue in the starting graph")
            return RoundingOutcome("stalled", bought, _cost(bought, costs), X, first_lp, trace, maxima)
        if one_edge:
            batch = [top_edge]
        else:
            batch = [e for e in x.support if x[e] >= HALF]
        trace.append(f"iter {it} obj {_q(lp.objective)} added {len(batch)} max {_q(top)}")
        if on_iteration is not None:
            on_iteration(working, batch)
        bought.extend(batch)
        working = working.with_edges(batch)
        it += 1
    return RoundingOutcome("success", bought, _cost(bought, costs), None, first_lp, trace, maxima)


def _infinite(c) -> bool:
    return isinstance(c, float) and math.isinf(c)


def _cost(F, costs) -> Fraction:
    return sum((costs[e] for e in F), Fraction(0))
