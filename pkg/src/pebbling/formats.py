"""Text formats for graphs, configurations and solutions.

Graph files hold ``n m`` on the first line and then one ``u v`` edge per line;
the compact one-line form ``n;u-v,u-v`` is also read. Configurations are
``v:count`` pairs separated by commas, and solutions are ``from>to`` pairs.
"""

from __future__ import annotations

from .core import Configuration, Move, Solution
from .graph import Graph, GraphError, build_graph


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _int(token: str, line: int, column: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line, column) from None


def parse_graph(text: str) -> Graph:
    stripped = text.strip()
    if ";" in stripped and "\n" not in stripped:
        return _parse_compact(stripped)
    lines = [
        (i + 1, raw.split("#", 1)[0])
        for i, raw in enumerate(text.splitlines())
    ]
    lines = [(no, s) for no, s in lines if s.strip()]
    if not lines:
        raise ParseError("empty graph file")
    head_no, head = lines[0]
    parts = head.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", head_no, 1)
    n = _int(parts[0], head_no, head.find(parts[0]) + 1)
    m = _int(parts[1], head_no, head.find(parts[1], len(parts[0])) + 1)
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges, found {len(lines) - 1}", head_no, 1)
    edges = []
    for no, s in lines[1:]:
        toks = s.split()
        if len(toks) != 2:
            raise ParseError("edge line must be 'u v'", no, 1)
        u = _int(toks[0], no, s.find(toks[0]) + 1)
        v = _int(toks[1], no, s.find(toks[1], s.find(toks[0]) + len(toks[0])) + 1)
        edges.append((u, v))
        try:
            build_graph(n, [(u, v)])
        except GraphError as exc:
            raise ParseError(str(exc), no, 1) from None
    return build_graph(n, edges)


def _parse_compact(text: str) -> Graph:
    head, _, body = text.partition(";")
    n = _int(head.strip(), 1, 1)
    edges = []
    col = len(head) + 2
    for chunk in body.split(","):
        if chunk.strip():
            a, sep, b = chunk.partition("-")
            if not sep:
                raise ParseError(f"edge {chunk.strip()!r} must be 'u-v'", 1, col)
            edge = (_int(a.strip(), 1, col), _int(b.strip(), 1, col))
            try:
                build_graph(n, [edge])
            except GraphError as exc:
                raise ParseError(str(exc), 1, col) from None
            edges.append(edge)
        col += len(chunk) + 1
    return build_graph(n, edges)


def format_graph(graph: Graph) -> str:
    edges = graph.edges()
    lines = [f"{graph.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def format_graph_compact(graph: Graph) -> str:
    return f"{graph.n};" + ",".join(f"{u}-{v}" for u, v in graph.edges())


def parse_config(text: str, n: int) -> Configuration:
    counts = [0] * n
    text = text.strip()
    col = 1
    if text:
        for chunk in text.split(","):
            v_tok, sep, c_tok = chunk.partition(":")
            if not sep:
                raise ParseError(f"entry {chunk.strip()!r} must be 'vertex:count'", 1, col)
            v = _int(v_tok.strip(), 1, col)
            c = _int(c_tok.strip(), 1, col + len(v_tok) + 1)
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} out of range for n={n}", 1, col)
            if c < 0:
                raise ParseError(f"negative count {c}", 1, col + len(v_tok) + 1)
            counts[v] += c
            col += len(chunk) + 1
    return Configuration(tuple(counts))


def format_config(config: Configuration) -> str:
    return ",".join(f"{v}:{c}" for v, c in enumerate(config.counts) if c)


def format_moves(moves) -> str:
    return ",".join(str(m) for m in moves)


def parse_moves(text: str) -> list[Move]:
    moves = []
    col = 1
    for chunk in text.strip().split(",") if text.strip() else []:
        a, sep, b = chunk.partition(">")
        if not sep:
            raise ParseError(f"move {chunk.strip()!r} must be 'from>to'", 1, col)
        moves.append(Move(_int(a.strip(), 1, col), _int(b.strip(), 1, col)))
        col += len(chunk) + 1
    return moves


def format_solution(solution: Solution) -> str:
    return format_moves(solution.moves)


def parse_solution(text: str, root: int, target: int) -> Solution:
    return Solution(root, target, tuple(parse_moves(text)))
