"""Small augmenting-path max-flow used by every cut computation.

Capacities may be ints or Fractions; callers scale fractional data to
integers when speed matters.
"""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Directed network with paired residual arcs (arc ``a`` and ``a ^ 1``)."""

    def __init__(self, size: int):
        self.size = size
        self.adj: list[list[int]] = [[] for _ in range(size)]
        self.head: list[int] = []
        self.cap: list = []

    def add_arc(self, u: int, v: int, cap) -> int:
        a = len(self.head)
        self.adj[u].append(a)
        self.head.append(v)
        self.cap.append(cap)
        self.adj[v].append(a + 1)
        self.head.append(u)
        self.cap.append(0)
        return a

    def max_flow(self, s: int, t: int, limit=None):
        """Push flow from s to t (Edmonds-Karp); stop early once ``limit`` is reached.

        After an unlimited run (or one that stays below ``limit``) the residual
        network encodes a minimum cut, see :meth:`source_side`.
        """
        head, cap, adj = self.head, self.cap, self.adj
        flow = 0
        while limit is None or flow < limit:
            parent = [-1] * self.size
            parent[s] = -2
            queue = deque([s])
            while queue and parent[t] == -1:
                u = queue.popleft()
                for a in adj[u]:
                    v = head[a]
                    if parent[v] == -1 and cap[a] > 0:
                        parent[v] = a
                        queue.append(v)
            if parent[t] == -1:
                break
            push = None
            v = t
            while v != s:
                a = parent[v]
                if push is None or cap[a] < push:
                    push = cap[a]
                v = head[a ^ 1]
            if limit is not None and push > limit - flow:
                push = limit - flow
            v = t
            while v != s:
                a = parent[v]
                cap[a] -= push
                cap[a ^ 1] += push
                v = head[a ^ 1]
            flow += push
        return flow

    def source_side(self, s: int) -> set[int]:
        """Nodes reachable from s in the residual network (the minimal min-cut side)."""
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for a in self.adj[u]:
                v = self.head[a]
                if v not in seen and self.cap[a] > 0:
                    seen.add(v)
                    stack.append(v)
        return seen

    def sink_side(self, t: int) -> set[int]:
        """Nodes that can still reach t in the residual network."""
        seen = {t}
        stack = [t]
        while stack:
            x = stack.pop()
            for a in self.adj[x]:
                y = self.head[a]
                if y not in seen and self.cap[a ^ 1] > 0:
                    seen.add(y)
                    stack.append(y)
        return seen
