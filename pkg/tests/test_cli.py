import json
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pebbling.cli import main
from pebbling.core import Configuration, Move, Solution
from pebbling.formats import (
    ParseError,
    format_config,
    format_graph,
    format_graph_compact,
    format_solution,
    parse_config,
    parse_graph,
    parse_moves,
    parse_solution,
)
from pebbling.graph import build_graph
from pebbling.reports import graph_digest, witness_from_json


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 8))
    pairs = list(combinations(range(n), 2))
    return build_graph(n, draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else [])


@given(graphs())
def test_graph_round_trips(g):
    assert parse_graph(format_graph(g)) == g
    assert parse_graph(format_graph_compact(g)) == g


@given(st.lists(st.integers(0, 9), min_size=1, max_size=8))
def test_config_round_trip(counts):
    c = Configuration(tuple(counts))
    assert parse_config(format_config(c), len(counts)) == c


def test_moves_round_trip():
    sol = Solution(2, 1, (Move(0, 1), Move(0, 1), Move(1, 2)))
    assert format_solution(sol) == "0>1,0>1,1>2"
    assert parse_solution("0>1,0>1,1>2", 2, 1) == sol
    assert parse_moves("") == []


def test_graph_parse_errors_carry_location():
    with pytest.raises(ParseError) as err:
        parse_graph("3 2\n0 1\n1 x\n")
    assert err.value.line == 3 and err.value.column == 3
    with pytest.raises(ParseError, match="announces 2"):
        parse_graph("3 2\n0 1\n")
    with pytest.raises(ParseError) as err:
        parse_graph("3 1\n# comment\n0 5\n")
    assert err.value.line == 3
    with pytest.raises(ParseError, match="u-v"):
        parse_graph("3;0-1,12")


def test_config_parse_errors():
    with pytest.raises(ParseError, match="out of range"):
        parse_config("0:1,7:2", 3)
    with pytest.raises(ParseError) as err:
        parse_config("0:1,1:z", 3)
    assert err.value.column == 7
    with pytest.raises(ParseError, match="vertex:count"):
        parse_config("0-1", 3)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_path(capsys):
    code, out, _ = run(capsys, "solve", "3;0-1,1-2", "0:4", "--root", "2", "--t", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "solvable" and len(lines[1].split(",")) == 3


def test_solve_odd_witness_file_unsolvable(capsys, tmp_path):
    cfg = tmp_path / "odd.txt"
    cfg.write_text("1:3,2:1,3:1,4:1\n")
    code, out, _ = run(capsys, "solve", "W5", str(cfg), "--root", "0", "--t", "2")
    assert code == 1 and out.strip() == "unsolvable"


def test_solve_parse_error_exit(capsys, tmp_path):
    code, _, err = run(capsys, "solve", "W5", "1:x", "--root", "0")
    assert code == 2 and "column" in err
    bad = tmp_path / "g.txt"
    bad.write_text("3 1\n0 q\n")
    code, _, err = run(capsys, "solve", str(bad), "0:4", "--root", "2")
    assert code == 2 and "line 2" in err


def test_solve_strategy_explain(capsys):
    code, out, _ = run(capsys, "solve", "W5", "1:8", "--root", "3", "--t", "2", "--strategy", "--explain")
    assert code == 0 and "root 3, target 2" in out
    code, _, err = run(capsys, "solve", "W5", "1:7", "--root", "3", "--t", "2", "--strategy")
    assert code == 2 and "threshold" in err


def test_number(capsys):
    assert run(capsys, "number", "W5", "--t", "2")[1].splitlines()[0] == "pi_2 = 8"
    assert run(capsys, "number", "W5", "--t", "2", "--root", "0")[1].startswith("pi_2 = 7")
    code, out, _ = run(capsys, "number", "S3", "--t", "2", "--root", "1", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["value"] == 9 and doc["root"] == 1
    assert parse_config(doc["witness"], 4).size == 8


def test_number_budget_exit(capsys, monkeypatch):
    assert run(capsys, "number", "W5", "--t", "3", "--root", "1", "--budget", "10")[0] == 3
    monkeypatch.setenv("PEBBLING_BUDGET", "10")
    assert run(capsys, "number", "W5", "--t", "3", "--root", "1")[0] == 3


def test_verify_flags_non_members(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--named", "W5", "C5", "--t", "1", "2", "--out", str(tmp_path / "rep"))
    assert code == 0 and "agreed 2/2 (2 rows outside G(n,k))" in out
    csv_text = (tmp_path / "rep.csv").read_text()
    assert csv_text.splitlines()[0] == "graph_id,n,k,t,exact,formula,agrees,witness"
    assert "not in G(n,k): no universal vertex" in csv_text
    rows = json.loads((tmp_path / "rep.json").read_text())
    assert [r["agrees"] for r in rows] == [True, True, None, None]


def test_verify_exhaustive_small(capsys):
    code, out, _ = run(capsys, "verify", "--exhaustive", "4", "5", "--t", "1", "2")
    assert code == 0 and out.splitlines()[-1] == "agreed 262/262"


@pytest.mark.slow
def test_verify_random_n7(capsys):
    code, out, _ = run(
        capsys, "verify", "--random", "20", "--n", "7", "--k", "2", "3", "4", "5",
        "--seed", "1", "--t", "1", "2", "3", "--workers", "2",
    )
    assert code == 0 and out.splitlines()[-1] == "agreed 60/60"


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "--random", "3", "--n", "6", "--k", "2")[0] == 2
    assert run(capsys, "verify", "--t", "1")[0] == 2


def test_sweep_stdout(capsys):
    code, out, _ = run(capsys, "sweep", "--t-max", "2", "--k-max", "4")
    assert code == 0
    assert out.splitlines() == [
        "t,k,m,regime", "1,2,0,tie", "1,3,0,h", "1,4,0,h", "2,2,4,f", "2,3,3,f", "2,4,2,tie",
    ]


def test_extremal(capsys, tmp_path):
    out_file = tmp_path / "w.json"
    code, out, _ = run(capsys, "extremal", "W5", "--t", "2", "--kind", "cut", "--out", str(out_file))
    assert code == 0 and "size 7" in out and "verified unsolvable" in out
    w = witness_from_json(out_file.read_text())
    assert w.config.size == 7 and w.cutset == (0, 2, 4)
    code, out, _ = run(capsys, "extremal", "W5", "--t", "2", "--kind", "odd")
    assert code == 0 and "size 6, root 0" in out
    code, _, err = run(capsys, "extremal", "C5", "--kind", "cut")
    assert code == 2 and "no universal vertex" in err


def test_gen_writes_manifest(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--exhaustive", "4", "--random", "2", "--n", "6", "--k", "3",
                     "--seed", "9", "--out", str(tmp_path))
    assert code == 0
    doc = json.loads((tmp_path / "manifest.json").read_text())
    assert len(doc["graphs"]) == 8 and doc["spec"]["random"]["seed"] == 9
    for entry in doc["graphs"]:
        g = parse_graph((tmp_path / entry["file"]).read_text())
        assert graph_digest(g) == entry["sha256"]


def test_info(capsys):
    code, out, _ = run(capsys, "info", "W5")
    assert code == 0
    assert "diameter 2" in out and "connectivity 3" in out and "universal 0" in out
    assert "1<0" in out


def test_unknown_graph_name(capsys):
    code, _, err = run(capsys, "info", "Q9")
    assert code == 2 and "Q9" in err
