"""Configurations, pebbling moves and the exact t-fold solvability oracle."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph import Graph, distances


class PebblingError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Configuration:
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.counts):
            raise PebblingError("pebble counts must be nonnegative")

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, int]) -> Configuration:
        counts = [0] * n
        for v, c in mapping.items():
            if not 0 <= v < n:
                raise PebblingError(f"vertex {v} out of range for n={n}")
            counts[v] += c
        return cls(tuple(counts))

    @classmethod
    def of(cls, *counts: int) -> Configuration:
        return cls(tuple(counts))

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def size(self) -> int:
        return sum(self.counts)

    @property
    def zeros(self) -> int:
        return self.counts.count(0)

    def add(self, v: int, amount: int = 1) -> Configuration:
        counts = list(self.counts)
        counts[v] += amount
        return Configuration(tuple(counts))


@dataclass(frozen=True)
class Move:
    src: int
    dst: int

    def __str__(self) -> str:
        return f"{self.src}>{self.dst}"


@dataclass(frozen=True)
class Solution:
    root: int
    target: int
    moves: tuple[Move, ...]

    @property
    def cost(self) -> int:
        """Pebbles of the starting configuration spent, counting delivered ones."""
        return len(self.moves) + self.target


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def potential(config: Configuration | Sequence[int]) -> int:
    counts = config.counts if isinstance(config, Configuration) else config
    return sum(c // 2 for c in counts)


def _check_config(graph: Graph, config: Configuration) -> None:
    if len(config) != graph.n:
        raise PebblingError(f"configuration has {len(config)} entries, graph has {graph.n} vertices")


def apply_move(graph: Graph, config: Configuration, move: Move) -> Configuration:
    if not graph.has_edge(move.src, move.dst):
        raise PebblingError(f"move {move}: vertices are not adjacent")
    if config[move.src] < 2:
        raise PebblingError(f"move {move}: source holds {config[move.src]} pebble(s)")
    counts = list(config.counts)
    counts[move.src] -= 2
    counts[move.dst] += 1
    return Configuration(tuple(counts))


class Solver:
    """Memoized t-fold solvability search for one graph and root.

    States keep the root count at zero: pebbles reaching the root are banked by
    lowering the outstanding demand, and moves out of the root are never tried
    (an acyclic optimal solution never uses one). One instance may be reused
    across many configurations; its memo table is private.
    """

    def __init__(self, graph: Graph, root: int, budget: int | None = None) -> None:
        self.graph = graph
        self.root = root
        self.budget = budget
        self.expansions = 0
        dist = distances(graph, root)
        far = graph.n + 1
        rank = [far if d < 0 else d for d in dist]
        moves = [
            (u, w)
            for u in range(graph.n)
            if u != root
            for w in graph.adj[u]
        ]
        moves.sort(key=lambda m: (rank[m[1]], rank[m[0]], m))
        self._moves = moves
        self._feeders = [u for u in graph.adj[root]]
        self._memo: dict[tuple[tuple[int, ...], int], bool] = {}

    def _state(self, counts: Sequence[int]) -> tuple[int, int]:
        """Split counts into (state with empty root, pebbles already on root)."""
        state = list(counts)
        banked = state[self.root]
        state[self.root] = 0
        return tuple(state), banked

    def can_deliver(self, state: tuple[int, ...], need: int) -> bool:
        if need <= 0:
            return True
        if sum(c >> 1 for c in state) < need:
            return False
        if sum(state[u] >> 1 for u in self._feeders) >= need:
            return True
        key = (state, need)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        self.expansions += 1
        if self.budget is not None and self.expansions > self.budget:
            raise BudgetExceeded(f"search exceeded {self.budget} state expansions")
        result = False
        root = self.root
        for u, w in self._moves:
            if state[u] < 2:
                continue
            nxt = list(state)
            nxt[u] -= 2
            if w == root:
                ok = self.can_deliver(tuple(nxt), need - 1)
            else:
                nxt[w] += 1
                ok = self.can_deliver(tuple(nxt), need)
            if ok:
                result = True
                break
        self._memo[key] = result
        return result

    def is_solvable(self, counts: Sequence[int], t: int) -> bool:
        state, banked = self._state(counts)
        return self.can_deliver(state, t - banked)

    def solve(self, counts: Sequence[int], t: int) -> list[Move] | None:
        state, banked = self._state(counts)
        need = t - banked
        if not self.can_deliver(state, need):
            return None
        moves: list[Move] = []
        root = self.root
        while need > 0:
            for u, w in self._moves:
                if state[u] < 2:
                    continue
                nxt = list(state)
                nxt[u] -= 2
                left = need - 1 if w == root else need
                if w != root:
                    nxt[w] += 1
                if self.can_deliver(tuple(nxt), left):
                    moves.append(Move(u, w))
                    state, need = tuple(nxt), left
                    break
            else:
                raise AssertionError("memo claimed solvable but no move continues")
        return moves


def _as_config(config) -> Configuration:
    return config if isinstance(config, Configuration) else Configuration(tuple(config))


def _validate_request(graph: Graph, config: Configuration, root: int, t: int) -> None:
    _check_config(graph, config)
    if t < 1:
        raise PebblingError("target t must be at least 1")
    if not 0 <= root < graph.n:
        raise PebblingError(f"root {root} out of range")


def is_solvable(graph: Graph, config: Configuration, root: int, t: int) -> bool:
    config = _as_config(config)
    _validate_request(graph, config, root, t)
    if config[root] >= t:
        return True
    return Solver(graph, root).is_solvable(config.counts, t)


def find_solution(graph: Graph, config: Configuration, root: int, t: int) -> Solution | None:
    config = _as_config(config)
    _validate_request(graph, config, root, t)
    moves = Solver(graph, root).solve(config.counts, t)
    if moves is None:
        return None
    return Solution(root, t, tuple(moves))


def verify_solution(graph: Graph, config: Configuration, solution: Solution) -> ReplayResult:
    """Replay ``solution`` from ``config`` without trusting how it was produced."""
    if len(config) != graph.n:
        return ReplayResult(False, None, "configuration does not match graph")
    counts = list(config.counts)
    for i, mv in enumerate(solution.moves):
        if not (0 <= mv.src < graph.n and 0 <= mv.dst < graph.n):
            return ReplayResult(False, i, f"move {mv} leaves the vertex range")
        if not graph.has_edge(mv.src, mv.dst):
            return ReplayResult(False, i, f"move {mv} joins non-adjacent vertices")
        if counts[mv.src] < 2:
            return ReplayResult(False, i, f"move {mv} starts from {counts[mv.src]} pebble(s)")
        counts[mv.src] -= 2
        counts[mv.dst] += 1
    if counts[solution.root] < solution.target:
        return ReplayResult(
            False, None, f"root holds {counts[solution.root]} < {solution.target} after replay"
        )
    return ReplayResult(True)


def replay(graph: Graph, config: Configuration, moves: Iterable[Move]) -> Configuration:
    for mv in moves:
        config = apply_move(graph, config, mv)
    return config


def cheapest_solution(graph: Graph, config: Configuration, root: int) -> list[Move] | None:
    """A move sequence placing one pebble on ``root`` with as few moves as possible."""
    _check_config(graph, config)
    if config[root] >= 1:
        return []
    solver = Solver(graph, root)
    if not solver.is_solvable(config.counts, 1):
        return None
    start = config.counts
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], Move] | None] = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for u, w in solver._moves:
            if state[u] < 2:
                continue
            nxt = list(state)
            nxt[u] -= 2
            nxt[w] += 1
            key = tuple(nxt)
            if key in parent:
                continue
            parent[key] = (state, Move(u, w))
            if w == root:
                path = []
                node = key
                while parent[node] is not None:
                    prev, mv = parent[node]
                    path.append(mv)
                    node = prev
                return path[::-1]
            queue.append(key)
    raise AssertionError("solvable configuration but breadth-first search found nothing")


def cheapest_solution_cost(graph: Graph, config: Configuration, root: int) -> int | None:
    """Pebbles consumed by the cheapest single-pebble solution (moves + 1).

    Zero when the root is already occupied; None when no pebble can reach it.
    """
    moves = cheapest_solution(graph, config, root)
    if moves is None:
        return None
    return len(moves) + 1 if moves else 0
