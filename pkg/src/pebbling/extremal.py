"""Lower-bound configurations: odd counts around a universal root, and the
cut-blocked configuration that hides a large stack behind a minimum cut."""

from __future__ import annotations

from dataclasses import dataclass

from .core import Configuration, PebblingError, is_solvable, potential
from .graph import Graph, min_vertex_cut, universal_vertices
from .numbers import NotInFamily, family_membership

ODD = "odd-at-universal"
CUT = "cut-blocked"


@dataclass(frozen=True)
class ExtremalWitness:
    kind: str
    root: int
    config: Configuration
    far: int | None = None
    cutset: tuple[int, ...] = ()


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def build_odd_witness(graph: Graph, u: int, t: int, heavy: int | None = None) -> ExtremalWitness:
    """Root ``u`` empty, every other vertex odd, total ``n + 2t - 3``.

    ``heavy`` is the vertex carrying ``2t - 1``; by default the first vertex
    other than ``u``.
    """
    if graph.n < 2:
        raise PebblingError("need at least two vertices")
    if graph.degree(u) != graph.n - 1:
        raise PebblingError(f"vertex {u} is not universal")
    if t < 1:
        raise PebblingError("target t must be at least 1")
    if heavy is None:
        heavy = 0 if u != 0 else 1
    if heavy == u:
        raise PebblingError("the heavy vertex must differ from the root")
    counts = [1] * graph.n
    counts[u] = 0
    counts[heavy] = 2 * t - 1
    return ExtremalWitness(ODD, u, Configuration(tuple(counts)))


def odd_witnesses(graph: Graph, u: int, t: int):
    """Every odd distribution of ``n + 2t - 3`` pebbles off an empty universal root."""
    others = [v for v in range(graph.n) if v != u]
    extra = t - 1

    def spread(i: int, left: int, acc: list[int]):
        if i == len(others) - 1:
            yield acc + [left]
            return
        for c in range(left, -1, -1):
            yield from spread(i + 1, left - c, acc + [c])

    for halves in spread(0, extra, []):
        counts = [0] * graph.n
        for v, h in zip(others, halves):
            counts[v] = 2 * h + 1
        yield ExtremalWitness(ODD, u, Configuration(tuple(counts)))


def cut_pair(graph: Graph, k: int) -> tuple[int, int, list[int]]:
    """First nonadjacent (root, far) pair whose minimum cut has exactly ``k`` vertices."""
    for r in range(graph.n):
        for s in range(graph.n):
            if r != s and not graph.has_edge(r, s):
                cut = min_vertex_cut(graph, r, s)
                if len(cut) == k:
                    return r, s, cut
    raise AssertionError(f"no nonadjacent pair separated by {k} vertices")


def build_cut_witness(graph: Graph, t: int) -> ExtremalWitness:
    k, failed = family_membership(graph)
    if failed:
        raise NotInFamily(f"not in G(n,k): {failed}")
    if t < 1:
        raise PebblingError("target t must be at least 1")
    r, s, cut = cut_pair(graph, k)
    counts = [1] * graph.n
    counts[r] = 0
    for x in cut:
        counts[x] = 0
    counts[s] = 4 * t - 1
    config = Configuration(tuple(counts))
    f = graph.n + 4 * t - k - 2
    assert config.size == f - 1, "cut witness size identity failed"
    assert set(universal_vertices(graph)) <= set(cut), "a universal vertex escaped the cut"
    return ExtremalWitness(CUT, r, config, s, tuple(cut))


def expected_size(graph: Graph, witness: ExtremalWitness, t: int) -> int:
    if witness.kind == ODD:
        return graph.n + 2 * t - 3
    if witness.kind == CUT:
        return graph.n + 4 * t - len(witness.cutset) - 2 - 1
    raise PebblingError(f"unknown witness kind {witness.kind!r}")


def verify_witness(graph: Graph, witness: ExtremalWitness, t: int) -> WitnessCheck:
    config = witness.config
    if len(config) != graph.n:
        return WitnessCheck(False, "configuration does not match the graph")
    want = expected_size(graph, witness, t)
    if config.size != want:
        return WitnessCheck(False, f"size {config.size} differs from declared {want}")
    if witness.kind == ODD:
        if config[witness.root] != 0:
            return WitnessCheck(False, "root is not empty")
        if any(c % 2 == 0 for v, c in enumerate(config.counts) if v != witness.root):
            return WitnessCheck(False, "a non-root count is even")
        if potential(config) != t - 1:
            return WitnessCheck(False, f"potential {potential(config)} is not t-1")
    else:
        zero = {witness.root, *witness.cutset}
        for v, c in enumerate(config.counts):
            want_c = 0 if v in zero else 4 * t - 1 if v == witness.far else 1
            if c != want_c:
                return WitnessCheck(False, f"vertex {v} holds {c}, expected {want_c}")
    if is_solvable(graph, config, witness.root, t):
        return WitnessCheck(False, "oracle found a solution")
    return WitnessCheck(True)
