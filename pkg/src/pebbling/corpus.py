"""Desk-scale graph generators: exhaustive labeled enumeration, random family
members built as cones, and a handful of named graphs."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator

from .graph import Graph, GraphError, build_graph, is_connected, universal_vertices, vertex_connectivity

EXHAUSTIVE_MAX_N = 6
SAMPLING_BUDGET = 10_000


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class GraphFilter:
    connected: bool = True
    universal: bool = False
    non_complete: bool = False
    k_min: int | None = None
    k_max: int | None = None

    def accepts(self, graph: Graph) -> bool:
        if self.connected and not is_connected(graph):
            return False
        if self.universal and not universal_vertices(graph):
            return False
        if self.non_complete and graph.is_complete():
            return False
        if self.k_min is not None or self.k_max is not None:
            k = vertex_connectivity(graph) if graph.n >= 2 else 0
            if self.k_min is not None and k < self.k_min:
                return False
            if self.k_max is not None and k > self.k_max:
                return False
        return True


FAMILY = GraphFilter(connected=True, universal=True, non_complete=True, k_min=2)


def enumerate_graphs(n: int, flt: GraphFilter = GraphFilter()) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices passing ``flt``, in edge-bitmask order."""
    if n > EXHAUSTIVE_MAX_N:
        raise CorpusError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX_N}")
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if bits >> i & 1]
        graph = build_graph(n, edges)
        if flt.accepts(graph):
            yield graph


def canonical_form(graph: Graph) -> tuple[tuple, list[int]]:
    """Isomorphism-invariant key plus each vertex's position in the canonical labeling.

    The key is the smallest sorted edge list over relabelings that respect a
    degree-refined vertex order. Two graphs with equal keys are isomorphic via
    ``v -> other_position.index(position[v])``.
    """
    n = graph.n
    sig = [
        (graph.degree(v), tuple(sorted(graph.degree(w) for w in graph.adj[v])))
        for v in range(n)
    ]
    groups: dict[tuple, list[int]] = {}
    for v in range(n):
        groups.setdefault(sig[v], []).append(v)
    blocks = [groups[s] for s in sorted(groups)]
    best = None
    edges = graph.edges()
    for perms in product(*(permutations(b) for b in blocks)):
        order = [v for block in perms for v in block]
        pos = {v: i for i, v in enumerate(order)}
        relabeled = tuple(sorted(tuple(sorted((pos[u], pos[w]))) for u, w in edges))
        if best is None or relabeled < best[0]:
            best = (relabeled, [pos[v] for v in range(n)])
    return (n, best[0]), best[1]


def canonical_key(graph: Graph) -> tuple:
    return canonical_form(graph)[0]


def isomorphism(
    src_position: list[int], dst_position: list[int]
) -> list[int]:
    """Vertex map between two graphs sharing a canonical key."""
    at = {p: v for v, p in enumerate(dst_position)}
    return [at[p] for p in src_position]


def cone(graph: Graph) -> Graph:
    """Add a new vertex ``n`` joined to every vertex of ``graph``."""
    apex = graph.n
    return build_graph(apex + 1, graph.edges() + [(v, apex) for v in range(apex)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return build_graph(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_member(n: int, k: int, seed: int | random.Random) -> Graph:
    """A non-complete k-connected graph on ``n`` vertices with a universal vertex.

    Built as a cone over a rejection-sampled non-complete graph of connectivity
    exactly ``k - 1``; the result's connectivity is re-checked.
    """
    if not 2 <= k <= n - 2:
        raise CorpusError(f"need 2 <= k <= n-2, got n={n}, k={k}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m = n - 1
    for _ in range(SAMPLING_BUDGET):
        base = random_graph(m, rng.uniform(0.3, 0.95), rng)
        if base.is_complete() or vertex_connectivity(base) != k - 1:
            continue
        graph = cone(base)
        if vertex_connectivity(graph) != k:
            raise AssertionError("cone connectivity identity failed")
        return graph
    raise CorpusError(f"no member with n={n}, k={k} after {SAMPLING_BUDGET} attempts")


def random_connected_graph(n: int, rng: random.Random, p: float | None = None) -> Graph:
    for _ in range(SAMPLING_BUDGET):
        graph = random_graph(n, rng.uniform(0.25, 0.9) if p is None else p, rng)
        if is_connected(graph):
            return graph
    raise CorpusError(f"no connected graph on {n} vertices after {SAMPLING_BUDGET} attempts")


def complete(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def wheel(n: int) -> Graph:
    """Hub 0 joined to a cycle on 1..n-1 (so ``wheel(5)`` is the 4-spoke wheel)."""
    rim = list(range(1, n))
    edges = [(0, v) for v in rim] + [(rim[i], rim[(i + 1) % len(rim)]) for i in range(len(rim))]
    return build_graph(n, edges)


_NAMED = re.compile(r"^(K|C|P|W|S)(\d+)$")


def named_graph(name: str) -> Graph:
    """``K4``, ``C5``, ``P3``, ``W5`` (n vertices in total) or ``S3`` (star with 3 leaves)."""
    match = _NAMED.match(name.strip())
    if not match:
        raise CorpusError(f"unknown graph name {name!r}")
    kind, size = match.group(1), int(match.group(2))
    builders = {"K": complete, "C": cycle, "P": path, "W": wheel, "S": star}
    try:
        return builders[kind](size)
    except (GraphError, IndexError, ZeroDivisionError) as exc:
        raise CorpusError(f"cannot build {name}: {exc}") from None
