"""Constructive t-fold solver for k-connected graphs with a universal vertex.

Rules are tried in a fixed order and every move is tagged with the rule that
produced it:

``cost4-induction``  while ``k < 2*need - 1``, spend a cheapest one-pebble
                     solution (cost at most 4) and lower the demand;
``slide``            march pebbles along zero-free, internally disjoint paths;
``universal-route``  after some slides, pair up leftover potential on a
                     universal vertex and forward it to the root;
``star-base``        the same pairing with no slides at all, i.e. solving on
                     the star centred at the universal vertex;
``fallback``         exact search, flagged in the trace.

Empty juniors are dropped before the slide and routing rules; that step emits
no moves and is recorded as an event.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import (
    Configuration,
    Move,
    PebblingError,
    Solution,
    cheapest_solution,
    find_solution,
    verify_solution,
)
from .graph import Graph, PathSystem, distances, route_paths, universal_vertices
from .numbers import NotInFamily, family_membership, predicted

SLIDE = "slide"
UNIVERSAL = "universal-route"
JUNIOR = "junior-preprocess"
STAR = "star-base"
COST4 = "cost4-induction"
FALLBACK = "fallback"


class StalePlan(PebblingError):
    pass


class StrategyIncomplete(RuntimeError):
    """Strict mode: the structured rules did not finish the job."""


class ClosedFormViolation(AssertionError):
    pass


@dataclass(frozen=True)
class SlidePlan:
    sources: tuple[int, ...]
    slides: PathSystem


@dataclass
class StrategyTrace:
    root: int
    target: int
    steps: list[tuple[Move, str]] = field(default_factory=list)
    events: list[str] = field(default_factory=list)
    used_fallback: bool = False

    @property
    def solution(self) -> Solution:
        return Solution(self.root, self.target, tuple(m for m, _ in self.steps))

    def rules(self) -> list[str]:
        seen: list[str] = []
        for _, tag in self.steps:
            if not seen or seen[-1] != tag:
                seen.append(tag)
        return seen

    def explain(self) -> str:
        lines = [f"root {self.root}, target {self.target}"]
        lines += [f"  note: {e}" for e in self.events]
        lines += [f"  {i + 1:3d}. {m}  [{tag}]" for i, (m, tag) in enumerate(self.steps)]
        if self.used_fallback:
            lines.append("  (exact fallback was used)")
        return "\n".join(lines)


def find_slides(
    graph: Graph, config: Configuration, root: int, p: int
) -> SlidePlan | None:
    """``p`` slides to ``root`` from potential moves, avoiding every non-root zero.

    Potential moves nearest the root are tried first; if that choice cannot be
    routed, any choice of sources is allowed (sources then never serve as
    interior vertices).
    """
    if p < 1:
        raise PebblingError("slide count must be at least 1")
    n = graph.n
    zeros = [v for v in range(n) if v != root and config[v] == 0]
    mult = {v: config[v] // 2 for v in range(n) if v != root and config[v] >= 2}
    if sum(mult.values()) < p:
        return None
    dist = _distances_avoiding(graph, root, set(zeros))
    ranked = sorted(mult, key=lambda v: (dist[v] < 0, dist[v], v))
    chosen: Counter[int] = Counter()
    left = p
    for v in ranked:
        take = min(left, mult[v])
        chosen[v] = take
        left -= take
        if left == 0:
            break
    paths = route_paths(graph, chosen, root, removed=zeros, edge_capacity=p)
    if len(paths) < p:
        paths = route_paths(graph, mult, root, removed=zeros, edge_capacity=p, limit=p)
        if len(paths) < p:
            return None
    paths.sort(key=lambda q: (len(q), q))
    return SlidePlan(tuple(q[0] for q in paths), PathSystem(root, tuple(paths)))


def _distances_avoiding(graph: Graph, root: int, blocked: set[int]) -> list[int]:
    if not blocked:
        return distances(graph, root)
    dist = [-1] * graph.n
    dist[root] = 0
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for w in graph.adj[x]:
                if dist[w] < 0 and w not in blocked:
                    dist[w] = dist[x] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


def execute_slides(
    graph: Graph, config: Configuration, plan: SlidePlan
) -> tuple[Configuration, int, list[Move]]:
    """Run every slide of ``plan``; returns the new configuration, the number of
    pebbles delivered and the moves made."""
    root = plan.slides.root
    uses = Counter(plan.sources)
    interior: Counter[int] = Counter()
    for q in plan.slides.paths:
        if q[-1] != root:
            raise StalePlan(f"slide {q} does not end at the root")
        interior.update(q[1:-1])
    for v, k in uses.items():
        if config[v] < 2 * k:
            raise StalePlan(f"source {v} holds {config[v]} pebbles for {k} slide(s)")
    for v in interior:
        if config[v] == 0:
            raise StalePlan(f"slide passes through empty vertex {v}")
    counts = list(config.counts)
    moves = []
    for q in plan.slides.paths:
        for a, b in zip(q, q[1:]):
            if not graph.has_edge(a, b) or counts[a] < 2:
                raise StalePlan(f"slide {q} cannot move {a}>{b}")
            counts[a] -= 2
            counts[b] += 1
            moves.append(Move(a, b))
    return Configuration(tuple(counts)), len(plan.slides.paths), moves


def _route_through(
    counts: list[int], hub: int, root: int, need: int
) -> list[Move] | None:
    """Pair potential moves onto ``hub`` and forward them to ``root`` (star solving)."""
    counts = list(counts)
    moves = []
    while need > 0:
        if counts[hub] >= 2:
            counts[hub] -= 2
            counts[root] += 1
            moves.append(Move(hub, root))
            need -= 1
            continue
        donor = next(
            (v for v in range(len(counts)) if v not in (hub, root) and counts[v] >= 2), None
        )
        if donor is None:
            return None
        counts[donor] -= 2
        counts[hub] += 1
        moves.append(Move(donor, hub))
    return moves


def _empty_juniors(graph: Graph, counts: list[int], root: int) -> list[int]:
    # Universal vertices stay: they are the routing hubs.
    keep = set(universal_vertices(graph)) | {root}
    gone: list[int] = []
    alive = set(range(graph.n))
    changed = True
    while changed:
        changed = False
        for y in sorted(alive):
            if y in keep or counts[y]:
                continue
            nbrs_y = {w for w in graph.adj[y] if w in alive}
            for x in sorted(alive):
                if x == y:
                    continue
                closed_x = {w for w in graph.adj[x] if w in alive} | {x}
                if nbrs_y <= closed_x:
                    gone.append(y)
                    alive.discard(y)
                    changed = True
                    break
            if changed:
                break
    return gone


def strategy_solve(
    graph: Graph,
    config: Configuration,
    root: int,
    t: int,
    strict: bool = False,
    check_size: bool = True,
) -> StrategyTrace:
    k, failed = family_membership(graph)
    if failed:
        raise NotInFamily(f"not in G(n,k): {failed}")
    if t < 1:
        raise PebblingError("target t must be at least 1")
    if len(config) != graph.n:
        raise PebblingError("configuration does not match the graph")
    if check_size and config.size < predicted(graph.n, k, t):
        raise PebblingError(
            f"size {config.size} is below the threshold {predicted(graph.n, k, t)}"
        )
    trace = StrategyTrace(root, t)
    counts = list(config.counts)

    def apply(moves: list[Move], tag: str) -> None:
        for mv in moves:
            counts[mv.src] -= 2
            counts[mv.dst] += 1
            trace.steps.append((mv, tag))

    if counts[root]:
        trace.events.append(f"root already holds {counts[root]} pebble(s)")

    while 0 < t - counts[root] and k < 2 * (t - counts[root]) - 1:
        banked = list(counts)
        banked[root] = 0
        moves = cheapest_solution(graph, Configuration(tuple(banked)), root)
        if moves is None or len(moves) + 1 > 4:
            trace.events.append("no solution of cost at most 4; leaving induction")
            break
        apply(moves, COST4)

    need = t - counts[root]
    if need > 0:
        juniors = _empty_juniors(graph, counts, root)
        if juniors:
            trace.events.append(f"{JUNIOR}: dropped empty juniors {juniors}")
        plan_moves = _base_rules(graph, counts, root, need, set(juniors), trace)
        if plan_moves is None:
            if strict:
                raise StrategyIncomplete("structured rules did not reach the target")
            rest = find_solution(graph, Configuration(tuple(counts)), root, t)
            if rest is None:
                raise ClosedFormViolation(
                    f"configuration {config.counts} is not {t}-fold solvable at {root}"
                )
            trace.used_fallback = True
            apply(list(rest.moves), FALLBACK)
        else:
            for moves, tag in plan_moves:
                apply(moves, tag)

    result = verify_solution(graph, config, trace.solution)
    if not result:
        raise AssertionError(f"strategy produced an invalid solution: {result.reason}")
    return trace


def _base_rules(
    graph: Graph, counts: list[int], root: int, need: int, dropped: set[int], trace
) -> list[tuple[list[Move], str]] | None:
    current = Configuration(tuple(counts))
    plan = find_slides(graph, current, root, need)
    if plan is not None:
        _, _, moves = execute_slides(graph, current, plan)
        return [(moves, SLIDE)]

    alive = [v for v in range(graph.n) if v not in dropped]
    hubs = [
        u for u in alive
        if u != root and all(w == u or graph.has_edge(u, w) for w in alive)
    ]
    hubs.sort(key=lambda u: (-counts[u], u))
    if not hubs:
        return None
    hub = hubs[0]
    for s in range(need - 1, 0, -1):
        plan = find_slides(graph, current, root, s)
        if plan is None:
            continue
        after, _, slide_moves = execute_slides(graph, current, plan)
        routed = _route_through(list(after.counts), hub, root, need - s)
        if routed is not None:
            return [(slide_moves, SLIDE), (routed, UNIVERSAL)]
    routed = _route_through(counts, hub, root, need)
    if routed is not None:
        return [(routed, STAR)]
    return None
