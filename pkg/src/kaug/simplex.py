"""Exact dual simplex for covering LPs grown by row generation.

Solves ``min c.x  s.t.  A x >= b,  0 <= x <= 1`` with ``c >= 0`` over
Fractions. The all-slack basis is dual feasible because ``c >= 0``, so rows
can be appended at any time and the dual simplex resumes from the current
basis. Bland's smallest-index rule (applied to the dual) prevents cycling.

The tableau is kept in dictionary form: row ``i`` reads
``x[basis[i]] + sum_j T[i][j] * x[nonbasic[j]] = rhs[i]`` and the objective
is ``z0 + sum_j d[j] * x[nonbasic[j]]``.
"""

from __future__ import annotations

import copy
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import IterationLimit

ZERO = Fraction(0)
ONE = Fraction(1)


class CutLP:
    def __init__(self, costs: Sequence, upper_bounds: bool = True):
        self.nvars = len(costs)
        if any(c < 0 for c in costs):
            raise ValueError("costs must be nonnegative")
        self.costs = [Fraction(c) for c in costs]
        self.nonbasic = list(range(self.nvars))
        self.d = list(self.costs)
        self.z0 = ZERO
        self.basis: list[int] = []
        self.T: list[list[Fraction]] = []
        self.rhs: list[Fraction] = []
        self.rows: list[tuple[dict[int, Fraction], Fraction]] = []
        self._next_slack = self.nvars
        self.pivots = 0
        if upper_bounds:
            for j in range(self.nvars):
                row = [ZERO] * self.nvars
                row[j] = ONE
                self._append(row, ONE)

    def _append(self, row, rhs):
        self.basis.append(self._next_slack)
        self._next_slack += 1
        self.T.append(row)
        self.rhs.append(rhs)

    def copy(self) -> "CutLP":
        return copy.deepcopy(self)

    def add_row(self, coeffs: Mapping[int, object], rhs) -> None:
        """Append the constraint ``sum coeffs[j] x_j >= rhs``."""
        coeffs = {j: Fraction(a) for j, a in coeffs.items() if a}
        rhs = Fraction(rhs)
        self.rows.append((coeffs, rhs))
        pos = {v: j for j, v in enumerate(self.nonbasic)}
        where = {v: i for i, v in enumerate(self.basis)}
        # slack s = a.x - rhs, rewritten over the current nonbasic variables
        expr = [ZERO] * self.nvars
        const = -rhs
        for var, a in coeffs.items():
            if var in pos:
                expr[pos[var]] += a
            else:
                i = where[var]
                const += a * self.rhs[i]
                Ti = self.T[i]
                for j in range(self.nvars):
                    if Ti[j]:
                        expr[j] -= a * Ti[j]
        self._append([-e for e in expr], const)

    def solve(self, max_pivots: int = 100_000) -> bool:
        """Run dual simplex to optimality; False if the rows are infeasible."""
        T, rhs, d = self.T, self.rhs, self.d
        nv = self.nvars
        while True:
            r = -1
            for i, b in enumerate(rhs):
                if b < 0 and (r < 0 or self.basis[i] < self.basis[r]):
                    r = i
            if r < 0:
                return True
            Tr = T[r]
            q = -1
            best = None
            for j in range(nv):
                a = Tr[j]
                if a < 0:
                    ratio = d[j] / -a
                    if best is None or ratio < best or (
                            ratio == best and self.nonbasic[j] < self.nonbasic[q]):
                        best, q = ratio, j
            if q < 0:
                return False
            self._pivot(r, q)
            self.pivots += 1
            if self.pivots > max_pivots:
                raise IterationLimit(f"simplex exceeded {max_pivots} pivots")

    def _pivot(self, r: int, q: int) -> None:
        T, rhs, d = self.T, self.rhs, self.d
        nv = self.nvars
        Tr = T[r]
        inv = 1 / Tr[q]
        new_r = [a * inv if a else ZERO for a in Tr]
        new_r[q] = inv
        rhs_r = rhs[r] * inv
        T[r] = new_r
        rhs[r] = rhs_r
        nz = [j for j in range(nv) if new_r[j] and j != q]
        for i in range(len(T)):
            if i == r:
                continue
            Ti = T[i]
            f = Ti[q]
            if not f:
                continue
            for j in nz:
                Ti[j] -= f * new_r[j]
            Ti[q] = -f * inv
            rhs[i] -= f * rhs_r
        f = d[q]
        if f:
            for j in nz:
                d[j] -= f * new_r[j]
            d[q] = -f * inv
            self.z0 += f * rhs_r
        self.basis[r], self.nonbasic[q] = self.nonbasic[q], self.basis[r]

    def solution(self) -> list[Fraction]:
        x = [ZERO] * self.nvars
        for i, var in enumerate(self.basis):
            if var < self.nvars:
                x[var] = self.rhs[i]
        return x

    @property
    def objective(self) -> Fraction:
        return self.z0

    def is_primal_feasible(self) -> bool:
        return all(b >= 0 for b in self.rhs)
