"""pebbling: exact t-fold pebbling numbers, constructive solving and closed-form checks.

Exit codes: 0 success (solvable / all agreed), 1 unsolvable or disagreement,
2 usage, parse or precondition error, 3 resource budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

from .core import BudgetExceeded, PebblingError, find_solution
from .corpus import FAMILY, CorpusError, enumerate_graphs, named_graph, random_member
from .extremal import CUT, ODD, build_cut_witness, build_odd_witness, verify_witness
from .formats import ParseError, format_config, format_graph, format_moves, parse_config, parse_graph
from .graph import GraphError, diameter, is_connected, junior_pairs, universal_vertices, vertex_connectivity
from .numbers import pebbling_number_rooted, pebbling_number_with_witness
from .reports import (
    manifest,
    rows_to_csv,
    rows_to_json,
    summarize,
    sweep,
    sweep_to_csv,
    verify_graphs,
    witness_to_json,
)
from .strategy import strategy_solve

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_graph(arg: str):
    """A graph file path, a compact ``n;u-v,...`` string, or a name such as ``W5``."""
    path = Path(arg)
    if path.exists():
        return parse_graph(path.read_text())
    if ";" in arg:
        return parse_graph(arg)
    try:
        return named_graph(arg)
    except CorpusError:
        raise UsageError(f"no graph file or known graph name {arg!r}") from None


def _read_text(arg: str) -> str:
    path = Path(arg)
    return path.read_text() if path.exists() else arg


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_solve(args) -> int:
    graph = load_graph(args.graph)
    config = parse_config(_read_text(args.config), graph.n)
    if args.strategy:
        trace = strategy_solve(graph, config, args.root, args.t, strict=args.strict)
        print("solvable")
        print(format_moves(m for m, _ in trace.steps))
        if args.explain:
            print(trace.explain())
        else:
            print(",".join(f"{m}[{tag}]" for m, tag in trace.steps))
        return EXIT_OK
    solution = find_solution(graph, config, args.root, args.t)
    if solution is None:
        print("unsolvable")
        return EXIT_NO
    print("solvable")
    print(format_moves(solution.moves))
    return EXIT_OK


def cmd_number(args) -> int:
    graph = load_graph(args.graph)
    if args.root is not None:
        value, witness = pebbling_number_rooted(
            graph, args.root, args.t, symmetry=args.symmetry, budget=args.budget
        )
        root = args.root
    else:
        value, root, witness = pebbling_number_with_witness(
            graph, args.t, symmetry=args.symmetry, budget=args.budget
        )
    if args.json:
        print(json.dumps({"t": args.t, "value": value, "root": root, "witness": format_config(witness)}))
    else:
        print(f"pi_{args.t} = {value}")
        print(f"root {root}")
        print(f"witness {format_config(witness)}")
    return EXIT_OK


def _corpus_entries(args) -> tuple[list, dict]:
    entries = []
    spec: dict = {}
    if args.exhaustive:
        spec["exhaustive"] = args.exhaustive
        for n in args.exhaustive:
            for i, g in enumerate(enumerate_graphs(n, FAMILY)):
                entries.append((f"ex-n{n}-{i}", g))
    if args.random:
        if args.seed is None:
            raise UsageError("--random requires --seed")
        if args.n is None or not args.k:
            raise UsageError("--random requires --n and --k")
        spec["random"] = {"count": args.random, "n": args.n, "k": args.k, "seed": args.seed}
        rng = random.Random(args.seed)
        for i in range(args.random):
            k = args.k[i % len(args.k)]
            entries.append((f"rand-n{args.n}-k{k}-{i}", random_member(args.n, k, rng)))
    for name in args.named or []:
        spec.setdefault("named", []).append(name)
        entries.append((name, named_graph(name)))
    for fname in args.graph_file or []:
        spec.setdefault("files", []).append(fname)
        entries.append((Path(fname).stem, parse_graph(Path(fname).read_text())))
    if not entries:
        raise UsageError("empty corpus: give --exhaustive, --random, --named or --graph-file")
    return entries, spec


def cmd_verify(args) -> int:
    entries, _ = _corpus_entries(args)
    rows = verify_graphs(entries, args.t, symmetry=args.symmetry, workers=args.workers)
    if args.out:
        Path(f"{args.out}.csv").write_text(rows_to_csv(rows))
        Path(f"{args.out}.json").write_text(rows_to_json(rows))
    else:
        sys.stdout.write(rows_to_csv(rows))
    agreed, total = summarize(rows)
    flagged = sum(1 for r in rows if not r.in_family)
    print(f"agreed {agreed}/{total}" + (f" ({flagged} rows outside G(n,k))" if flagged else ""))
    return EXIT_OK if agreed == total else EXIT_NO


def cmd_sweep(args) -> int:
    _emit(sweep_to_csv(sweep(args.t_max, args.k_max)), args.out)
    return EXIT_OK


def cmd_extremal(args) -> int:
    graph = load_graph(args.graph)
    if args.kind == "odd":
        hubs = universal_vertices(graph)
        if args.universal is None and not hubs:
            raise UsageError("no universal vertex")
        u = hubs[0] if args.universal is None else args.universal
        witness = build_odd_witness(graph, u, args.t)
    else:
        witness = build_cut_witness(graph, args.t)
    _emit(witness_to_json(witness), args.out)
    check = verify_witness(graph, witness, args.t)
    print(f"size {witness.config.size}, root {witness.root}: "
          + ("verified unsolvable" if check else f"NOT verified ({check.reason})"))
    return EXIT_OK if check else EXIT_NO


def cmd_gen(args) -> int:
    entries, spec = _corpus_entries(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    listed = []
    for gid, g in entries:
        fname = f"{gid}.txt"
        (out / fname).write_text(format_graph(g))
        listed.append((gid, fname, g))
    (out / "manifest.json").write_text(manifest(spec, listed))
    print(f"wrote {len(listed)} graphs to {out}")
    return EXIT_OK


def cmd_info(args) -> int:
    graph = load_graph(args.graph)
    print(f"n {graph.n}")
    print(f"m {graph.m}")
    print(f"diameter {diameter(graph) if is_connected(graph) else 'disconnected'}")
    print(f"connectivity {vertex_connectivity(graph) if graph.n >= 2 else 0}")
    print(f"universal {' '.join(map(str, universal_vertices(graph))) or '-'}")
    pairs = junior_pairs(graph)
    print("juniors " + (" ".join(f"{y}<{x}" for y, x in pairs) or "-"))
    return EXIT_OK


def _add_corpus_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--exhaustive", type=int, nargs="+", metavar="N",
                   help="all labeled family members on N vertices (N <= 6)")
    p.add_argument("--random", type=int, metavar="COUNT", help="random family members")
    p.add_argument("--n", type=int, help="vertex count for --random")
    p.add_argument("--k", type=int, nargs="+", help="connectivities for --random (cycled)")
    p.add_argument("--named", nargs="+", help="named graphs, e.g. W5 C5 K4")
    p.add_argument("--graph-file", nargs="+", help="graph files in the edge-list format")
    p.add_argument("--seed", type=int, help="required with --random")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pebbling", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    env_budget = os.environ.get("PEBBLING_BUDGET")

    p = sub.add_parser("solve", help="decide t-fold solvability and print a solution")
    p.add_argument("graph")
    p.add_argument("config", help="config file or inline 'v:count,...'")
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--strategy", action="store_true", help="use the constructive rule-based solver")
    p.add_argument("--strict", action="store_true", help="with --strategy: no exact fallback")
    p.add_argument("--explain", action="store_true", help="with --strategy: print the rule sequence")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("number", help="exact t-pebbling number")
    p.add_argument("graph")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--root", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--symmetry", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--budget", type=int, default=int(env_budget) if env_budget else None)
    p.set_defaults(func=cmd_number)

    p = sub.add_parser("verify", help="compare exact pi_t with the closed form over a corpus")
    _add_corpus_args(p)
    p.add_argument("--t", type=int, nargs="+", default=[1, 2])
    p.add_argument("--out", help="write OUT.csv and OUT.json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--symmetry", action=argparse.BooleanOptionalAction, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="table of offsets m with pi_t = n + m")
    p.add_argument("--t-max", type=int, default=4)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("extremal", help="build and check a lower-bound configuration")
    p.add_argument("graph")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--kind", choices=["odd", "cut"], default="cut")
    p.add_argument("--universal", type=int, help="root for --kind odd")
    p.add_argument("--out", help="witness JSON path (default stdout)")
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("gen", help="write corpus graphs and a manifest")
    _add_corpus_args(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("info", help="structural summary of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_info)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParseError, UsageError, GraphError, PebblingError, CorpusError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
