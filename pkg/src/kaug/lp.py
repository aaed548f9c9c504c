"""Cut LP over set-pairs, solved exactly by row generation.

Variables are the purchasable non-edges (finite cost). A row
``x(delta(P)) >= p(P)`` is generated from the most violated set-pair found
by the node-split max-flow separation oracle; rows are never dropped, and the
point returned is a vertex of the restricted LP that satisfies every
set-pair constraint, hence a vertex of the full polyhedron.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import EmptySupport, Infeasible, IterationLimit
from .graph import Edge, Graph, edge, vertex_cut
from .setpairs import SetPair, deficiency
from .simplex import CutLP

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class FractionalSolution:
    values: Mapping[Edge, Fraction]

    def __getitem__(self, e: Edge) -> Fraction:
        return self.values.get(edge(*e), Fraction(0))

    @property
    def support(self) -> list[Edge]:
        return sorted(e for e, v in self.values.items() if v > 0)

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values.values())

    def cover(self, P: SetPair) -> Fraction:
        return sum((v for e, v in self.values.items() if v and P.covered_by(e)), Fraction(0))


@dataclass(frozen=True)
class ConstraintRow:
    setpair: SetPair
    rhs: int


@dataclass(frozen=True)
class SeparationResult:
    setpair: SetPair | None = None
    slack: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.setpair is None


def separate(G: Graph, k: int, x: Mapping[Edge, Fraction] | FractionalSolution) -> SeparationResult:
    """Most violated set-pair constraint for ``x``, or a feasible verdict.

    Ties on slack are broken by the smaller boundary, then by the
    lexicographically first terminal pair.
    """
    if isinstance(x, FractionalSolution):
        x = x.values
    x = {edge(*e): Fraction(v) for e, v in x.items() if v}
    best = None
    for u, w in G.non_edges():
        cut = vertex_cut(G, u, w, x, below=k)
        if cut is None:
            continue
        slack = cut.value - k
        key = (slack, len(cut.cut_nodes))
        if best is None or key < best[0]:
            best = (key, SetPair.of(cut.source_side, cut.sink_side))
    if best is None:
        return SeparationResult()
    return SeparationResult(best[1], best[0][0])


def max_fractional_edge(x: FractionalSolution | Mapping[Edge, Fraction]) -> tuple[Edge, Fraction]:
    values = x.values if isinstance(x, FractionalSolution) else x
    best = None
    for e in sorted(values):
        v = values[e]
        if v > 0 and (best is None or v > best[1]):
            best = (e, v)
    if best is None:
        raise EmptySupport("fractional solution has empty support")
    return best


@dataclass
class LPResult:
    x: FractionalSolution
    objective: Fraction
    rows: list[ConstraintRow] = field(default_factory=list)
    rounds: int = 0


class LPVCSolver:
    """Row-generation driver for the set-pair cut LP of one graph.

    ``fix`` returns an independent copy with one variable pinned, which is
    how the exact oracle branches without losing the generated rows.
    """

    def __init__(self, G: Graph, k: int, costs: Mapping[Edge, object],
                 seed_rows: Iterable[SetPair] = ()):
        if G.n < k + 1:
            raise Infeasible(f"{G.n} nodes cannot be {k}-connected")
        self.G = G
        self.k = k
        # infinite cost means not purchasable
        self.costs = {edge(*p): Fraction(c) for p, c in costs.items()
                      if not G.has_edge(*p) and not (isinstance(c, float) and math.isinf(c))}
        self.candidates: list[Edge] = sorted(self.costs)
        self.index = {e: i for i, e in enumerate(self.candidates)}
        self.lp = CutLP([self.costs[e] for e in self.candidates])
        self.rows: list[ConstraintRow] = []
        self._seen: set[SetPair] = set()
        self.rounds = 0
        for P in seed_rows:
            if P.is_valid(G) and deficiency(G, k, P) > 0:
                self.add_setpair(P)

    def add_setpair(self, P: SetPair) -> None:
        if P in self._seen:
            return
        self._seen.add(P)
        rhs = deficiency(self.G, self.k, P)
        coeffs = {self.index[e]: 1 for e in self.candidates if P.covered_by(e)}
        self.rows.append(ConstraintRow(P, rhs))
        self.lp.add_row(coeffs, rhs)

    def fix(self, e: Edge, value: int) -> "LPVCSolver":
        child = _copy_solver(self)
        j = child.index[edge(*e)]
        if value:
            child.lp.add_row({j: 1}, 1)
        else:
            child.lp.add_row({j: -1}, 0)
        return child

    def current(self) -> FractionalSolution:
        vals = self.lp.solution()
        return FractionalSolution({e: vals[i] for i, e in enumerate(self.candidates)})

    def solve(self, max_rounds: int = 10_000) -> LPResult:
        while True:
            if not self.lp.solve():
                raise Infeasible("no fractional augmentation satisfies the set-pair rows")
            x = self.current()
            sep = separate(self.G, self.k, x)
            if sep.feasible:
                return LPResult(x, self.lp.objective, list(self.rows), self.rounds)
            if sep.setpair in self._seen:
                raise RuntimeError(f"separation returned an existing row {sep.setpair}")
            self.add_setpair(sep.setpair)
            self.rounds += 1
            if self.rounds > max_rounds:
                raise IterationLimit(f"row generation exceeded {max_rounds} rounds")

    def dump_lp(self) -> str:
        """The restricted LP in CPLEX-like text, coefficients as p/q."""
        name = {e: f"x_{e[0]}_{e[1]}" for e in self.candidates}
        lines = ["\\ restricted set-pair cut LP", "Minimize",
                 " obj: " + (" + ".join(f"{_q(self.costs[e])} {name[e]}" for e in self.candidates)
                             or "0")]
        lines.append("Subject To")
        for i, row in enumerate(self.rows):
            terms = [name[e] for e in self.candidates if row.setpair.covered_by(e)]
            lines.append(f" r{i}: {' + '.join(terms) or '0'} >= {row.rhs}")
        lines.append("Bounds")
        lines.extend(f" 0 <= {name[e]} <= 1" for e in self.candidates)
        lines.append("End")
        return "\n".join(lines) + "\n"


def _copy_solver(s: LPVCSolver) -> LPVCSolver:
    child = object.__new__(LPVCSolver)
    child.__dict__.update(s.__dict__)
    child.lp = s.lp.copy()
    child.rows = list(s.rows)
    child._seen = set(s._seen)
    return child


def _q(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def solve_lpvc(G: Graph, k: int, costs: Mapping[Edge, object],
               seed_rows: Iterable[SetPair] = ()) -> LPResult:
    """Basic optimal solution of the set-pair cut LP (with ``x <= 1``)."""
    return LPVCSolver(G, k, costs, seed_rows).solve()
