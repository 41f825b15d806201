"""Simple undirected graphs and the structural algorithms pebbling needs.

Vertices are the integers ``0..n-1``. Connectivity questions are answered with
unit-capacity max-flow on the usual vertex-split network: every vertex ``v``
becomes an arc ``v_in -> v_out`` of capacity 1 and every edge ``{u, w}`` becomes
the arcs ``u_out -> w_in`` and ``w_out -> u_in``.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from ._flow import FlowNetwork

UNREACHABLE = -1


class GraphError(ValueError):
    pass


class InsufficientConnectivity(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    _masks: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self) -> None:
        masks = tuple(sum(1 << w for w in nbrs) for nbrs in self.adj)
        object.__setattr__(self, "_masks", masks)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return frozenset(self.adj[v]) | {v}

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in self.adj[u] if u < w]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def is_complete(self) -> bool:
        return all(len(a) == self.n - 1 for a in self.adj)

    def mask(self, v: int) -> int:
        return self._masks[v]


@dataclass(frozen=True)
class PathSystem:
    root: int
    paths: tuple[tuple[int, ...], ...]

    def starts(self) -> list[int]:
        return [p[0] for p in self.paths]

    def __len__(self) -> int:
        return len(self.paths)


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for edge in edges:
        u, w = edge
        if not (0 <= u < n and 0 <= w < n):
            raise GraphError(f"edge ({u}, {w}): endpoint out of range for n={n}")
        if u == w:
            raise GraphError(f"edge ({u}, {w}): self-loop")
        nbrs[u].add(w)
        nbrs[w].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def distances(graph: Graph, v: int) -> list[int]:
    """Breadth-first hop counts from ``v``; ``UNREACHABLE`` marks other components."""
    dist = [UNREACHABLE] * graph.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for w in graph.adj[x]:
            if dist[w] == UNREACHABLE:
                dist[w] = dist[x] + 1
                queue.append(w)
    return dist


def is_connected(graph: Graph) -> bool:
    return graph.n == 0 or UNREACHABLE not in distances(graph, 0)


def eccentricity(graph: Graph, v: int) -> int:
    dist = distances(graph, v)
    if UNREACHABLE in dist:
        raise GraphError("graph is disconnected")
    return max(dist)


def diameter(graph: Graph) -> int:
    return max((eccentricity(graph, v) for v in range(graph.n)), default=0)


def universal_vertices(graph: Graph) -> list[int]:
    return [v for v in range(graph.n) if len(graph.adj[v]) == graph.n - 1]


def is_junior(graph: Graph, y: int, x: int) -> bool:
    """True when every neighbor of ``y`` lies in the closed neighborhood of ``x``."""
    if y == x:
        raise GraphError("a vertex is not compared with itself")
    closed = graph.mask(x) | (1 << x)
    return graph.mask(y) & ~closed == 0


def junior_pairs(graph: Graph) -> list[tuple[int, int]]:
    return [
        (y, x)
        for y in range(graph.n)
        for x in range(graph.n)
        if y != x and is_junior(graph, y, x)
    ]


def remove_vertex(graph: Graph, y: int) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``V - {y}`` plus the old-to-new label mapping."""
    return remove_vertices(graph, [y])


def remove_vertices(graph: Graph, gone: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    gone = set(gone)
    for y in gone:
        if not 0 <= y < graph.n:
            raise GraphError(f"vertex {y} out of range")
    keep = [v for v in range(graph.n) if v not in gone]
    relabel = {old: new for new, old in enumerate(keep)}
    edges = [(relabel[u], relabel[w]) for u, w in graph.edges() if u in relabel and w in relabel]
    return build_graph(len(keep), edges), relabel


def _split_network(
    graph: Graph,
    root: int,
    sources: Mapping[int, int],
    removed: frozenset[int] | set[int] = frozenset(),
    edge_capacity: int = 1,
) -> tuple[FlowNetwork, int, int]:
    # Source vertices get their flow straight into v_out and have no v_in,
    # so no path can pass through them.
    n = graph.n
    net = FlowNetwork(2 * n + 1)
    supersource = 2 * n
    for v in range(n):
        if v in removed or v == root:
            continue
        if v in sources:
            net.add_arc(supersource, 2 * v + 1, sources[v])
        else:
            net.add_arc(2 * v, 2 * v + 1, 1)
    for u in range(n):
        if u in removed or u == root:
            continue
        for w in graph.adj[u]:
            if w in removed or w in sources:
                continue
            net.add_arc(2 * u + 1, 2 * w, edge_capacity)
    return net, supersource, 2 * root


def _decompose(net: FlowNetwork, supersource: int, sink: int) -> list[tuple[int, ...]]:
    paths = []
    while True:
        live = net.flow_arcs(supersource)
        if not live:
            return paths
        node = supersource
        path: list[int] = []
        while node != sink:
            arc = net.flow_arcs(node)[0]
            arc[1] += 1
            net.arcs[arc[0]][arc[2]][1] -= 1
            node = arc[0]
            vertex = node // 2
            if not path or path[-1] != vertex:
                if vertex in path:
                    raise AssertionError("flow decomposition revisited a vertex")
                path.append(vertex)
        paths.append(tuple(path))


def route_paths(
    graph: Graph,
    sources: Mapping[int, int],
    root: int,
    removed: Iterable[int] = (),
    edge_capacity: int = 1,
    limit: int | None = None,
) -> list[tuple[int, ...]]:
    """Maximum family of internally disjoint paths from ``sources`` to ``root``.

    ``sources`` maps a start vertex to how many paths may begin there. Start
    vertices are never used as interior vertices. With ``edge_capacity`` above 1
    several paths from one start may use the same edge into the root.
    """
    removed = set(removed)
    net, ss, sink = _split_network(graph, root, sources, removed, edge_capacity)
    net.max_flow(ss, sink, limit)
    return _decompose(net, ss, sink)


def local_connectivity(
    graph: Graph, s: int, r: int, removed: Iterable[int] = ()
) -> int:
    """Maximum number of internally disjoint s-r paths (s, r nonadjacent)."""
    net, ss, sink = _split_network(graph, r, {s: graph.n}, set(removed))
    return net.max_flow(ss, sink)


def internally_disjoint_paths(graph: Graph, s: int, r: int) -> PathSystem:
    if s == r:
        raise GraphError("endpoints must differ")
    return PathSystem(r, tuple(route_paths(graph, {s: graph.n}, r)))


def vertex_connectivity(graph: Graph) -> int:
    """Minimum vertex-cut size; ``n - 1`` for complete graphs.

    Uses the Esfahanian-Hakimi reduction: a minimum-degree vertex ``v`` is either
    outside some minimum cut (then the cut separates ``v`` from a non-neighbor)
    or inside every one (then it separates two neighbors of ``v``).
    """
    n = graph.n
    if n < 2:
        raise GraphError("connectivity needs at least two vertices")
    if graph.is_complete():
        return n - 1
    v = min(range(n), key=graph.degree)
    best = graph.degree(v)
    for w in range(n):
        if w != v and not graph.has_edge(v, w):
            best = min(best, local_connectivity(graph, v, w))
    for x, y in combinations(graph.adj[v], 2):
        if not graph.has_edge(x, y):
            best = min(best, local_connectivity(graph, x, y))
    return best


def min_vertex_cut(graph: Graph, r: int, s: int) -> list[int]:
    """Lexicographically smallest minimum (r, s)-vertex cut."""
    if r == s:
        raise GraphError("endpoints must differ")
    if graph.has_edge(r, s):
        raise GraphError(f"vertices {r} and {s} are adjacent; no separating set exists")
    need = local_connectivity(graph, s, r)
    cut: list[int] = []
    for v in range(graph.n):
        if need == 0:
            break
        if v in (r, s):
            continue
        if local_connectivity(graph, s, r, removed=cut + [v]) == need - 1:
            cut.append(v)
            need -= 1
    return cut


def disjoint_paths(graph: Graph, starts: Sequence[int], root: int) -> PathSystem:
    """One path per element of the multiset ``starts``, pairwise internally disjoint.

    Repeated starts share only their common first vertex (and the root).
    Returned paths run start -> root in the order of ``starts``.
    """
    mult = Counter(starts)
    if root in mult:
        raise GraphError("the root may not be a start vertex")
    if len(starts) > vertex_connectivity(graph):
        raise InsufficientConnectivity(
            f"{len(starts)} paths requested but connectivity is {vertex_connectivity(graph)}"
        )
    found = route_paths(graph, mult, root)
    if len(found) < len(starts):
        raise AssertionError("Menger routing failed below the connectivity bound")
    by_start: dict[int, list[tuple[int, ...]]] = {}
    for p in found:
        by_start.setdefault(p[0], []).append(p)
    return PathSystem(root, tuple(by_start[v].pop() for v in starts))


def check_path_system(
    graph: Graph, system: PathSystem, starts: Sequence[int] | None = None
) -> str | None:
    """Independent validator; returns a diagnostic string, or None when valid."""
    root = system.root
    if starts is not None and sorted(system.starts()) != sorted(starts):
        return "start vertices do not match the requested multiset"
    start_set = set(system.starts())
    used: set[int] = set()
    for i, path in enumerate(system.paths):
        if len(path) < 2 or path[-1] != root:
            return f"path {i} does not end at the root"
        if len(set(path)) != len(path):
            return f"path {i} is not simple"
        for a, b in zip(path, path[1:]):
            if not graph.has_edge(a, b):
                return f"path {i} uses non-edge ({a}, {b})"
        inner = set(path[1:-1])
        if inner & used or inner & start_set:
            return f"path {i} shares an interior vertex"
        used |= inner
    return None
