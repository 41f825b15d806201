"""Closed-form t-pebbling formulas and exact pebbling numbers by enumeration."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .core import BudgetExceeded, Configuration, PebblingError, Solver
from .graph import Graph, GraphError, diameter, eccentricity, is_connected, universal_vertices, vertex_connectivity

DEFAULT_BUDGET = 20_000_000
BUDGET_ENV = "PEBBLING_BUDGET"


class NotInFamily(PebblingError):
    """The graph is not k-connected with a universal vertex (and non-complete)."""


@dataclass(frozen=True)
class FormulaInputs:
    n: int
    k: int
    t: int

    def __post_init__(self) -> None:
        if self.n < 3:
            raise PebblingError(f"n must be at least 3, got {self.n}")
        if not 2 <= self.k <= self.n - 2:
            raise PebblingError(f"k must lie in [2, n-2], got k={self.k} with n={self.n}")
        if self.t < 1:
            raise PebblingError(f"t must be at least 1, got {self.t}")


def formulas(inp: FormulaInputs) -> tuple[int, int, int]:
    f = inp.n + 4 * inp.t - inp.k - 2
    h = inp.n + 2 * inp.t - 2
    return f, h, max(f, h)


def predicted(n: int, k: int, t: int) -> int:
    return formulas(FormulaInputs(n, k, t))[2]


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def twin_classes(graph: Graph, exclude: Sequence[int] = ()) -> list[list[int]]:
    """Classes of vertices with equal closed or equal open neighborhoods.

    Swapping two such twins is an automorphism, so counts may be taken
    non-increasing inside a class without losing any configuration up to
    symmetry. Vertices in ``exclude`` stay in singleton classes.
    """
    skip = set(exclude)
    seen: set[int] = set()
    classes = []
    for v in range(graph.n):
        if v in seen:
            continue
        group = [v]
        seen.add(v)
        if v not in skip:
            closed = graph.mask(v) | (1 << v)
            for w in range(v + 1, graph.n):
                if w in seen or w in skip:
                    continue
                if graph.mask(w) | (1 << w) == closed or graph.mask(w) == graph.mask(v):
                    group.append(w)
                    seen.add(w)
        classes.append(group)
    return classes


def configurations(
    n: int,
    size: int,
    caps: Sequence[int | None] | None = None,
    classes: Sequence[Sequence[int]] | None = None,
) -> Iterator[tuple[int, ...]]:
    """All count vectors of total ``size`` on ``n`` vertices.

    ``caps`` bounds individual vertices; within each of ``classes`` the counts
    are forced non-increasing in vertex order. Order is deterministic: earlier
    vertices take their largest values first.
    """
    cap = [size if caps is None or caps[v] is None else min(size, caps[v]) for v in range(n)]
    leader = [-1] * n
    if classes:
        for group in classes:
            ordered = sorted(group)
            for a, b in zip(ordered, ordered[1:]):
                leader[b] = a
    suffix = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        suffix[v] = suffix[v + 1] + cap[v]
    counts = [0] * n

    def rec(v: int, left: int) -> Iterator[tuple[int, ...]]:
        if v == n:
            if left == 0:
                yield tuple(counts)
            return
        hi = min(left, cap[v])
        if leader[v] >= 0:
            hi = min(hi, counts[leader[v]])
        lo = max(0, left - suffix[v + 1])
        for c in range(hi, lo - 1, -1):
            counts[v] = c
            yield from rec(v + 1, left - c)
        counts[v] = 0

    yield from rec(0, size)


@dataclass
class _ScanState:
    checked: int = 0
    budget: int = field(default_factory=default_budget)


def _first_unsolvable(
    solver: Solver, n: int, size: int, t: int, classes, scan: _ScanState
) -> tuple[int, ...] | None:
    caps: list[int | None] = [None] * n
    caps[solver.root] = t - 1
    for counts in configurations(n, size, caps, classes):
        scan.checked += 1
        if scan.checked > scan.budget:
            raise BudgetExceeded(
                f"oracle budget {scan.budget} exhausted while scanning size {size} "
                f"(root {solver.root}, t={t})"
            )
        if not solver.is_solvable(counts, t):
            return counts
    return None


_PI1_CACHE: dict[Graph, int] = {}


def _scan_start(graph: Graph, root: int, t: int, symmetry: bool, solvers: dict) -> int:
    n = graph.n
    d = diameter(graph)
    if d <= 2:
        if t == 1:
            return n + 1
        pi1 = _PI1_CACHE.get(graph)
        if pi1 is None:
            pi1 = pebbling_number(graph, 1, symmetry=symmetry, solvers=solvers)[0]
            _PI1_CACHE[graph] = pi1
        return pi1 + 4 * t - 4
    return (2 ** eccentricity(graph, root)) * t + n


def pebbling_number_rooted(
    graph: Graph,
    root: int,
    t: int,
    symmetry: bool | None = None,
    budget: int | None = None,
    solvers: dict[int, Solver] | None = None,
) -> tuple[int, Configuration]:
    """Exact rooted t-pebbling number with a maximum unsolvable witness.

    The scan starts at a size believed sufficient, confirms that every
    configuration of that size is solvable (climbing if not), then descends
    until an unsolvable configuration appears. Monotonicity makes the first
    unsolvable size found, plus one, the answer.
    """
    if t < 1:
        raise PebblingError("target t must be at least 1")
    if not is_connected(graph):
        raise GraphError("pebbling numbers need a connected graph")
    if symmetry is None:
        symmetry = graph.n >= 6
    solvers = {} if solvers is None else solvers
    solver = solvers.get(root)
    if solver is None:
        solver = solvers[root] = Solver(graph, root)
    classes = twin_classes(graph, exclude=[root]) if symmetry else None
    scan = _ScanState(budget=default_budget() if budget is None else budget)
    n = graph.n

    start = _scan_start(graph, root, t, symmetry, solvers)
    bad = _first_unsolvable(solver, n, start, t, classes, scan)
    while bad is not None:
        start += 1
        bad = _first_unsolvable(solver, n, start, t, classes, scan)
    for size in range(start - 1, -1, -1):
        bad = _first_unsolvable(solver, n, size, t, classes, scan)
        if bad is not None:
            return size + 1, Configuration(bad)
    raise AssertionError("the empty configuration must be unsolvable")


def pebbling_number(
    graph: Graph,
    t: int,
    symmetry: bool | None = None,
    budget: int | None = None,
    solvers: dict[int, Solver] | None = None,
) -> tuple[int, int]:
    """Graph t-pebbling number and the first root attaining it."""
    value, worst, _ = pebbling_number_with_witness(graph, t, symmetry, budget, solvers)
    return value, worst


def pebbling_number_with_witness(
    graph: Graph,
    t: int,
    symmetry: bool | None = None,
    budget: int | None = None,
    solvers: dict[int, Solver] | None = None,
    rooted: dict[int, int] | None = None,
) -> tuple[int, int, Configuration]:
    solvers = {} if solvers is None else solvers
    best = None
    for r in range(graph.n):
        value, witness = pebbling_number_rooted(graph, r, t, symmetry, budget, solvers)
        if rooted is not None:
            rooted[r] = value
        if best is None or value > best[0]:
            best = (value, r, witness)
    return best


def family_membership(graph: Graph) -> tuple[int | None, str | None]:
    """Connectivity of ``graph`` if it belongs to the studied family, else the failing clause."""
    if graph.n < 3:
        return None, "fewer than 3 vertices"
    if not is_connected(graph):
        return None, "disconnected"
    if not universal_vertices(graph):
        return None, "no universal vertex"
    if graph.is_complete():
        return None, "complete graph"
    k = vertex_connectivity(graph)
    if k < 2:
        return None, f"connectivity {k} < 2"
    return k, None


@dataclass
class VerificationReport:
    graph_id: str
    n: int
    k: int
    t: int
    exact_pi: int
    formula_p: int
    witness_root: int
    witness: Configuration
    rooted: dict[int, int] = field(default_factory=dict)

    @property
    def agrees(self) -> bool:
        return self.exact_pi == self.formula_p


def check_closed_form(
    graph: Graph,
    t: int,
    graph_id: str | None = None,
    symmetry: bool | None = None,
    budget: int | None = None,
    solvers: dict[int, Solver] | None = None,
) -> VerificationReport:
    k, failed = family_membership(graph)
    if failed:
        raise NotInFamily(f"not in G(n,k): {failed}")
    rooted: dict[int, int] = {}
    exact, root, witness = pebbling_number_with_witness(
        graph, t, symmetry, budget, solvers, rooted
    )
    if graph_id is None:
        from .formats import format_graph_compact

        graph_id = format_graph_compact(graph)
    return VerificationReport(
        graph_id, graph.n, k, t, exact, predicted(graph.n, k, t), root, witness, rooted
    )


def check_multifold_bound(
    graph: Graph, t: int, symmetry: bool | None = None, solvers: dict[int, Solver] | None = None
) -> bool:
    if diameter(graph) != 2:
        raise GraphError(f"bound applies to diameter 2 graphs; diameter is {diameter(graph)}")
    solvers = {} if solvers is None else solvers
    pi1 = pebbling_number(graph, 1, symmetry, solvers=solvers)[0]
    pit = pebbling_number(graph, t, symmetry, solvers=solvers)[0]
    return pit <= pi1 + 4 * t - 4
