"""Verification runs over graph collections, plus CSV/JSON serialization of
reports, witnesses, sweep tables and corpus manifests."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Configuration
from .corpus import canonical_form, isomorphism
from .extremal import ExtremalWitness
from .formats import format_config, format_graph, parse_config
from .graph import Graph
from .numbers import VerificationReport, check_closed_form, family_membership

CSV_COLUMNS = ["graph_id", "n", "k", "t", "exact", "formula", "agrees", "witness"]


@dataclass
class ReportRow:
    graph_id: str
    n: int
    t: int
    k: int | None = None
    exact: int | None = None
    formula: int | None = None
    witness_root: int | None = None
    witness: Configuration | None = None
    status: str = "in-family"
    rooted: dict[int, int] | None = None

    @property
    def in_family(self) -> bool:
        return self.status == "in-family"

    @property
    def agrees(self) -> bool | None:
        if not self.in_family:
            return None
        return self.exact == self.formula

    def witness_text(self) -> str:
        if self.witness is None:
            return ""
        return f"{self.witness_root}@{format_config(self.witness)}"

    def to_json(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "exact": self.exact,
            "formula": self.formula,
            "agrees": self.agrees,
            "status": self.status,
            "witness": None
            if self.witness is None
            else {"root": self.witness_root, "config": format_config(self.witness)},
            "rooted": None if self.rooted is None else {str(r): v for r, v in self.rooted.items()},
        }


def row_from_report(report: VerificationReport) -> ReportRow:
    return ReportRow(
        report.graph_id,
        report.n,
        report.t,
        report.k,
        report.exact_pi,
        report.formula_p,
        report.witness_root,
        report.witness,
        rooted=dict(report.rooted),
    )


def _class_reports(graph: Graph, ts: Sequence[int], symmetry: bool | None) -> list[VerificationReport]:
    solvers: dict = {}
    return [check_closed_form(graph, t, "", symmetry, solvers=solvers) for t in ts]


def _relabel(row: ReportRow, phi: list[int]) -> ReportRow:
    """Transport a row computed on a representative to an isomorphic graph."""
    counts = [0] * len(phi)
    for v, c in enumerate(row.witness.counts):
        counts[phi[v]] = c
    return ReportRow(
        row.graph_id,
        row.n,
        row.t,
        row.k,
        row.exact,
        row.formula,
        phi[row.witness_root],
        Configuration(tuple(counts)),
        rooted={phi[r]: v for r, v in row.rooted.items()},
    )


def verify_graphs(
    entries: Iterable[tuple[str, Graph]],
    ts: Sequence[int],
    symmetry: bool | None = None,
    workers: int = 1,
    share_isomorphic: bool = True,
) -> list[ReportRow]:
    """One row per (graph, t), in input order.

    Graphs outside the family get a flagged row per t. With
    ``share_isomorphic`` the exact computation runs once per isomorphism class
    and its witness is carried over along the isomorphism.
    """
    entries = list(entries)
    plan = []
    classes: dict[tuple, tuple[Graph, list[int]]] = {}
    for gid, graph in entries:
        _, failed = family_membership(graph)
        if failed:
            plan.append((gid, graph, None, None, failed))
            continue
        if share_isomorphic:
            key, pos = canonical_form(graph)
            classes.setdefault(key, (graph, pos))
            plan.append((gid, graph, key, pos, None))
        else:
            key = ("labeled", len(plan))
            classes[key] = (graph, list(range(graph.n)))
            plan.append((gid, graph, key, list(range(graph.n)), None))

    keys = list(classes)
    reps = [classes[k][0] for k in keys]
    if workers > 1 and len(reps) > 1:
        with ProcessPoolExecutor(workers) as pool:
            computed = list(pool.map(_class_reports, reps, [ts] * len(reps), [symmetry] * len(reps)))
    else:
        computed = [_class_reports(g, ts, symmetry) for g in reps]
    by_key = dict(zip(keys, computed))

    rows: list[ReportRow] = []
    for gid, graph, key, pos, failed in plan:
        if failed:
            rows.extend(
                ReportRow(gid, graph.n, t, status=f"not in G(n,k): {failed}") for t in ts
            )
            continue
        phi = isomorphism(classes[key][1], pos)
        for report in by_key[key]:
            row = _relabel(row_from_report(report), phi)
            row.graph_id = gid
            rows.append(row)
    return rows


def summarize(rows: Sequence[ReportRow]) -> tuple[int, int]:
    member = [r for r in rows if r.in_family]
    return sum(1 for r in member if r.agrees), len(member)


def rows_to_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        agrees = r.status if not r.in_family else str(r.agrees).lower()
        writer.writerow(
            [r.graph_id, r.n, "" if r.k is None else r.k, r.t,
             "" if r.exact is None else r.exact, "" if r.formula is None else r.formula,
             agrees, r.witness_text()]
        )
    return buf.getvalue()


def rows_to_json(rows: Sequence[ReportRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2)


def witness_to_json(witness: ExtremalWitness) -> str:
    doc = {
        "kind": witness.kind,
        "root": witness.root,
        "n": len(witness.config),
        "config": format_config(witness.config),
        "far": witness.far,
        "cutset": list(witness.cutset),
    }
    return json.dumps(doc, indent=2)


def witness_from_json(text: str) -> ExtremalWitness:
    doc = json.loads(text)
    return ExtremalWitness(
        doc["kind"],
        doc["root"],
        parse_config(doc["config"], doc["n"]),
        doc.get("far"),
        tuple(doc.get("cutset") or ()),
    )


@dataclass(frozen=True)
class SweepRow:
    t: int
    k: int
    m: int
    regime: str


def sweep(t_max: int, k_max: int, k_min: int = 2) -> list[SweepRow]:
    """Offsets ``m`` with pi_t = n + m over the (t, k) grid."""
    rows = []
    for t in range(1, t_max + 1):
        for k in range(k_min, k_max + 1):
            f_off, h_off = 4 * t - k - 2, 2 * t - 2
            regime = "f" if k < 2 * t else "h" if k > 2 * t else "tie"
            rows.append(SweepRow(t, k, max(f_off, h_off), regime))
    return rows


def sweep_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", "k", "m", "regime"])
    for r in rows:
        writer.writerow([r.t, r.k, r.m, r.regime])
    return buf.getvalue()


def graph_digest(graph: Graph) -> str:
    return hashlib.sha256(format_graph(graph).encode()).hexdigest()


def manifest(spec: dict, entries: Sequence[tuple[str, str, Graph]]) -> str:
    return json.dumps(
        {
            "spec": spec,
            "graphs": [
                {"id": gid, "file": fname, "sha256": graph_digest(g)} for gid, fname, g in entries
            ],
        },
        indent=2,
    )
