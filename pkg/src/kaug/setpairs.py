"""Set-pairs: deficiency, covering, classification and uncrossing.

A set-pair is an unordered pair of disjoint nonempty node sets with no graph
edge between them. Pieces are kept in a canonical order so that equality
ignores the order in which they were given.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Literal

from .errors import NotDeficient, NotMeetingPoint, SizeLimit
from .graph import Edge, Graph, gamma, outside


def _key(piece: frozenset[int]) -> tuple[int, ...]:
    return tuple(sorted(piece))


@dataclass(frozen=True)
class SetPair:
    first: frozenset[int]
    second: frozenset[int]

    @classmethod
    def of(cls, a: Iterable[int], b: Iterable[int]) -> "SetPair":
        a, b = frozenset(a), frozenset(b)
        if _key(b) < _key(a):
            a, b = b, a
        return cls(a, b)

    @property
    def pieces(self) -> tuple[frozenset[int], frozenset[int]]:
        return (self.first, self.second)

    @property
    def union(self) -> frozenset[int]:
        return self.first | self.second

    def boundary(self, n: int) -> frozenset[int]:
        """``Gamma`` of the pair: every node outside both pieces."""
        return frozenset(range(n)) - self.union

    def covered_by(self, e: Edge) -> bool:
        u, v = e
        return (u in self.first and v in self.second) or (v in self.first and u in self.second)

    def is_valid(self, G: Graph) -> bool:
        a, b = self.first, self.second
        if not a or not b or a & b:
            return False
        return not any(G.adj(u) & b for u in a)

    def __repr__(self):
        return f"SetPair({sorted(self.first)}, {sorted(self.second)})"


@dataclass(frozen=True)
class PairRelation:
    kind: Literal["independent", "nested", "crossing"]
    # dominant piece of the first and of the second argument (nested only)
    dominant: tuple[frozenset[int], frozenset[int]] | None = None


@dataclass(frozen=True)
class UncrossResult:
    otimes: tuple[frozenset[int], frozenset[int]]
    oplus: tuple[frozenset[int], frozenset[int]]

    @property
    def degenerate(self) -> bool:
        return not all(self.otimes) or not all(self.oplus)

    def pairs(self) -> tuple[SetPair, SetPair]:
        return SetPair.of(*self.otimes), SetPair.of(*self.oplus)


def deficiency(G: Graph, k: int, P: SetPair) -> int:
    return max(0, k - (G.n - len(P.union)))


def covers(e: Edge, P: SetPair) -> bool:
    return P.covered_by(e)


def coverage_count(F: Iterable[Edge], P: SetPair) -> int:
    return sum(1 for e in F if P.covered_by(e))


def covering_edges(P: SetPair, edges: Iterable[Edge]) -> list[Edge]:
    return [e for e in edges if P.covered_by(e)]


def from_deficient_set(G: Graph, k: int, U: Iterable[int]) -> SetPair:
    U = frozenset(U)
    rest = outside(G, U)
    if not U or not rest or gamma(G, U) >= k:
        raise NotDeficient(f"{sorted(U)} is not a deficient set for k={k}")
    return SetPair.of(U, rest)


def classify(P: SetPair, Q: SetPair) -> PairRelation:
    for piece in P.pieces:
        if not (piece & Q.first) and not (piece & Q.second):
            return PairRelation("independent")
    for piece in Q.pieces:
        if not (piece & P.first) and not (piece & P.second):
            return PairRelation("independent")
    U, W = P.pieces, Q.pieces
    for i, j in product((0, 1), repeat=2):
        if U[i] >= W[1 - j] and W[j] >= U[1 - i]:
            return PairRelation("nested", (U[i], W[j]))
    return PairRelation("crossing")


def meeting_points(P: SetPair, Q: SetPair) -> frozenset[int]:
    U, W = P.pieces, Q.pieces
    out = set()
    for i, j in product((0, 1), repeat=2):
        if U[1 - i] & W[1 - j]:
            out |= U[i] & W[j]
    return frozenset(out)


def uncross(P: SetPair, Q: SetPair, u: int) -> UncrossResult:
    U, W = P.pieces, Q.pieces
    for i, j in product((0, 1), repeat=2):
        if u in U[i] and u in W[j] and U[1 - i] & W[1 - j]:
            return UncrossResult(
                otimes=(U[i] | W[j], U[1 - i] & W[1 - j]),
                oplus=(U[i] & W[j], U[1 - i] | W[1 - j]),
            )
    raise NotMeetingPoint(f"node {u} is not a meeting point of {P} and {Q}")


def tail_head(P: SetPair) -> tuple[frozenset[int], frozenset[int]]:
    a, b = P.pieces
    if len(b) < len(a):
        return b, a
    # canonical order already puts the lexicographically smaller piece first
    return a, b


def all_setpairs(G: Graph, max_n: int = 10) -> Iterator[SetPair]:
    """Every set-pair of G, by brute force over 3-labellings (tiny graphs only)."""
    n = G.n
    if n > max_n:
        raise SizeLimit(f"set-pair enumeration on n={n} exceeds max_n={max_n}")
    masks = G.masks
    for labels in product((0, 1, 2), repeat=n):
        a = b = 0
        for v, lab in enumerate(labels):
            if lab == 1:
                a |= 1 << v
            elif lab == 2:
                b |= 1 << v
        # each unordered pair once: the piece holding the smallest labelled node is ``a``
        if not a or not b or (b & -b) < (a & -a):
            continue
        if any(masks[v] & b for v in range(n) if a >> v & 1):
            continue
        yield SetPair.of(
            (v for v in range(n) if a >> v & 1), (v for v in range(n) if b >> v & 1)
        )


def deficient_setpairs(G: Graph, k: int, max_n: int = 10) -> list[SetPair]:
    return [P for P in all_setpairs(G, max_n) if deficiency(G, k, P) > 0]
