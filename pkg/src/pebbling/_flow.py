"""Unit-scale max-flow used by the connectivity and disjoint-path routines."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    """Residual network with Edmonds-Karp augmentation.

    Arcs are stored as ``[head, residual, reverse_index, capacity]`` lists in
    per-node adjacency; reverse arcs carry capacity 0.
    """

    def __init__(self, size: int) -> None:
        self.size = size
        self.arcs: list[list[list[int]]] = [[] for _ in range(size)]

    def add_arc(self, tail: int, head: int, capacity: int) -> None:
        self.arcs[tail].append([head, capacity, len(self.arcs[head]), capacity])
        self.arcs[head].append([tail, 0, len(self.arcs[tail]) - 1, 0])

    def max_flow(self, source: int, sink: int, limit: int | None = None) -> int:
        total = 0
        while limit is None or total < limit:
            parent: list[tuple[int, int] | None] = [None] * self.size
            parent[source] = (source, -1)
            queue = deque([source])
            while queue and parent[sink] is None:
                node = queue.popleft()
                for index, (head, cap, _, _) in enumerate(self.arcs[node]):
                    if cap > 0 and parent[head] is None:
                        parent[head] = (node, index)
                        queue.append(head)
            if parent[sink] is None:
                break
            push = None if limit is None else limit - total
            node = sink
            while node != source:
                tail, index = parent[node]
                cap = self.arcs[tail][index][1]
                push = cap if push is None else min(push, cap)
                node = tail
            node = sink
            while node != source:
                tail, index = parent[node]
                arc = self.arcs[tail][index]
                arc[1] -= push
                self.arcs[node][arc[2]][1] += push
                node = tail
            total += push
        return total

    def residual_reachable(self, source: int) -> set[int]:
        seen = {source}
        stack = [source]
        while stack:
            node = stack.pop()
            for head, cap, _, _ in self.arcs[node]:
                if cap > 0 and head not in seen:
                    seen.add(head)
                    stack.append(head)
        return seen

    def flow_arcs(self, node: int) -> list[list[int]]:
        """Forward arcs out of ``node`` currently carrying positive flow."""
        return [arc for arc in self.arcs[node] if arc[3] > 0 and arc[1] < arc[3]]
