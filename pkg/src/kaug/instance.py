"""Problem instances, their text formats, and the random generator.

Instance file::

    kaug 1
    n <int> k <int>
    e <u> <v>              one per base edge
    c <u> <v> <num>/<den>  one per purchasable pair

Pairs listed in neither block are not purchasable (infinite cost).

Solution file::

    f <u> <v>
    cost <num>/<den>
    connected <k> true|false
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

from .errors import FormatError
from .graph import Edge, Graph, edge

HEADER = "kaug 1"


@dataclass(frozen=True)
class Instance:
    graph: Graph
    k: int
    costs: Mapping[Edge, Fraction]
    name: str = ""
    seed: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        norm = {}
        for e, c in self.costs.items():
            if isinstance(c, float) and math.isinf(c):
                continue
            e = edge(*e)
            c = Fraction(c)
            if c < 0:
                raise ValueError(f"negative cost on {e}")
            if not self.graph.has_edge(*e):
                norm[e] = c
        object.__setattr__(self, "costs", norm)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def candidates(self) -> list[Edge]:
        return sorted(self.costs)

    def cost_of(self, F: Iterable[Edge]) -> Fraction:
        return sum((self.costs[edge(*e)] for e in F), Fraction(0))

    def full_graph(self) -> Graph:
        return self.graph.with_edges(self.costs)


def _q(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _frac(tok: str) -> Fraction:
    try:
        if "/" in tok:
            num, den = tok.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(tok))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {tok!r}") from exc


def dumps_instance(inst: Instance) -> str:
    lines = [HEADER, f"n {inst.n} k {inst.k}"]
    lines += [f"e {u} {v}" for u, v in sorted(inst.graph.edges)]
    lines += [f"c {u} {v} {_q(c)}" for (u, v), c in sorted(inst.costs.items())]
    return "\n".join(lines) + "\n"


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line.split()


def loads_instance(text: str, name: str = "") -> Instance:
    it = _lines(text)
    try:
        _, head = next(it)
        _, nk = next(it)
    except StopIteration:
        raise FormatError("truncated instance file") from None
    if " ".join(head) != HEADER:
        raise FormatError(f"expected header {HEADER!r}")
    if len(nk) != 4 or nk[0] != "n" or nk[2] != "k":
        raise FormatError("second line must read 'n <int> k <int>'")
    n, k = int(nk[1]), int(nk[3])
    edges, costs = [], {}
    for no, tok in it:
        try:
            if tok[0] == "e" and len(tok) == 3:
                edges.append(edge(int(tok[1]), int(tok[2])))
            elif tok[0] == "c" and len(tok) == 4:
                costs[edge(int(tok[1]), int(tok[2]))] = _frac(tok[3])
            else:
                raise FormatError(f"line {no}: unrecognised record {' '.join(tok)!r}")
        except ValueError as exc:
            raise FormatError(f"line {no}: {exc}") from exc
    overlap = set(edges) & set(costs)
    if overlap:
        raise FormatError(f"pairs listed as both edge and candidate: {sorted(overlap)}")
    try:
        return Instance(Graph(n, edges), k, costs, name=name)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_instance(path) -> Instance:
    path = Path(path)
    return loads_instance(path.read_text(), name=path.stem)


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps_instance(inst))


@dataclass(frozen=True)
class Solution:
    edges: tuple[Edge, ...]
    cost: Fraction
    k: int
    connected: bool


def dumps_solution(sol: Solution) -> str:
    lines = [f"f {u} {v}" for u, v in sorted(sol.edges)]
    lines.append(f"cost {_q(sol.cost)}")
    lines.append(f"connected {sol.k} {'true' if sol.connected else 'false'}")
    return "\n".join(lines) + "\n"


def loads_solution(text: str) -> Solution:
    edges, cost, k, connected = [], None, None, None
    for no, tok in _lines(text):
        if tok[0] == "f" and len(tok) == 3:
            edges.append(edge(int(tok[1]), int(tok[2])))
        elif tok[0] == "cost" and len(tok) == 2:
            cost = _frac(tok[1])
        elif tok[0] == "connected" and len(tok) == 3 and tok[2] in ("true", "false"):
            k, connected = int(tok[1]), tok[2] == "true"
        else:
            raise FormatError(f"line {no}: unrecognised record {' '.join(tok)!r}")
    if cost is None or k is None:
        raise FormatError("solution needs 'cost' and 'connected' lines")
    return Solution(tuple(sorted(edges)), cost, k, connected)


def gen_random(n: int, k: int, edge_density: float, cost_range: tuple[int, int] = (1, 10),
               seed: int = 0, purchasable: int | None = None) -> Instance:
    """Random base graph G(n, p) with integer costs on the non-edges.

    With ``purchasable`` set, only that many random non-edges get a cost and
    the rest are left unpurchasable.
    """
    if n < k + 1:
        raise ValueError(f"need n >= k + 1, got n={n}, k={k}")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    edges = [p for p in pairs if rng.random() < edge_density]
    G = Graph(n, edges)
    lo, hi = cost_range
    non_edges = G.non_edges()
    costs = {e: Fraction(rng.randint(lo, hi)) for e in non_edges}
    if purchasable is not None and purchasable < len(non_edges):
        keep = set(rng.sample(non_edges, purchasable))
        costs = {e: c for e, c in costs.items() if e in keep}
    return Instance(G, k, costs, name=f"rand-n{n}-k{k}-s{seed}", seed=seed)
