from itertools import product
from math import comb

import pytest

from pebbling.core import PebblingError, is_solvable
from pebbling.corpus import FAMILY, complete, cone, cycle, enumerate_graphs, path, star, wheel
from pebbling.graph import GraphError
from pebbling.numbers import (
    FormulaInputs,
    NotInFamily,
    check_multifold_bound,
    check_closed_form,
    configurations,
    formulas,
    pebbling_number,
    pebbling_number_rooted,
    twin_classes,
)

from .oracles import naive_solvable

W5 = wheel(5)


def test_formulas():
    assert formulas(FormulaInputs(10, 3, 2)) == (13, 12, 13)
    assert formulas(FormulaInputs(5, 3, 1)) == (4, 5, 5)
    f, h, p = formulas(FormulaInputs(8, 4, 2))
    assert f == h == p == 10


@pytest.mark.parametrize("n,k,t", [(2, 2, 1), (5, 1, 1), (5, 4, 1), (5, 3, 0)])
def test_formula_inputs_rejected(n, k, t):
    with pytest.raises(PebblingError):
        FormulaInputs(n, k, t)


def test_configurations_count_and_caps():
    assert sum(1 for _ in configurations(4, 6)) == comb(9, 3)
    capped = list(configurations(3, 4, caps=[1, None, None]))
    assert all(c[0] <= 1 for c in capped) and len(capped) == 5 + 4
    sorted_pairs = list(configurations(3, 4, classes=[[0, 1]]))
    assert all(c[0] >= c[1] for c in sorted_pairs)


def _brute_rooted(graph, root, t, limit):
    """Largest unsolvable size by full enumeration with the naive oracle, plus one."""
    worst = -1
    for counts in product(range(limit + 1), repeat=graph.n):
        if sum(counts) <= limit and not naive_solvable(graph, list(counts), root, t):
            worst = max(worst, sum(counts))
    return worst + 1


def test_k3_rooted_by_brute_force():
    k3 = complete(3)
    assert _brute_rooted(k3, 0, 1, 4) == 3
    for r in range(3):
        assert pebbling_number_rooted(k3, r, 1)[0] == 3


def test_rooted_examples():
    value, witness = pebbling_number_rooted(W5, 0, 2)
    assert value == 7 == 5 + 2 * 2 - 2
    assert not is_solvable(W5, witness, 0, 2) and witness.size == 6
    value, witness = pebbling_number_rooted(star(3), 1, 2)
    assert value == 9 == 4 + 4 * 2 - 3


def test_graph_number_examples():
    assert pebbling_number(W5, 1)[0] == 5
    assert pebbling_number(W5, 2)[0] == 8
    assert pebbling_number(complete(4), 2)[0] == 6


def test_small_numbers_match_brute_force():
    assert pebbling_number_rooted(path(3), 0, 1)[0] == _brute_rooted(path(3), 0, 1, 5) == 4
    assert pebbling_number_rooted(W5, 1, 1)[0] == _brute_rooted(W5, 1, 1, 5) == 5


def test_path_needs_climbing_start():
    # P_4 from an end vertex: pi_t = 8t
    for t in (1, 2):
        assert pebbling_number_rooted(path(4), 0, t)[0] == 8 * t


def test_symmetry_reduction_preserves_values():
    for g in list(enumerate_graphs(5, FAMILY))[:40:7] + [W5, cycle(5)]:
        for r in range(g.n):
            for t in (1, 2):
                plain = pebbling_number_rooted(g, r, t, symmetry=False)[0]
                reduced = pebbling_number_rooted(g, r, t, symmetry=True)[0]
                assert plain == reduced


def test_twin_classes():
    assert twin_classes(W5) == [[0], [1, 3], [2, 4]]
    assert twin_classes(W5, exclude=[1]) == [[0], [1], [2, 4], [3]]
    assert twin_classes(complete(3)) == [[0, 1, 2]]


def test_check_closed_form():
    rep = check_closed_form(W5, 2)
    assert rep.agrees and rep.exact_pi == rep.formula_p == 8
    assert not is_solvable(W5, rep.witness, rep.witness_root, 2)
    assert check_closed_form(W5, 3).exact_pi == 12
    with pytest.raises(NotInFamily, match="no universal vertex"):
        check_closed_form(cycle(5), 1)
    with pytest.raises(NotInFamily, match="complete"):
        check_closed_form(complete(4), 1)


def test_check_multifold_bound():
    assert check_multifold_bound(W5, 2)
    assert check_multifold_bound(W5, 3)
    assert pebbling_number(W5, 3)[0] == 12 < pebbling_number(W5, 1)[0] + 4 * 3 - 4
    cone_p3 = cone(path(3))
    for t in (2, 3):
        assert pebbling_number(cone_p3, t)[0] == pebbling_number(cone_p3, 1)[0] + 4 * t - 4
    with pytest.raises(GraphError):
        check_multifold_bound(complete(4), 2)


def test_budget_error():
    from pebbling.core import BudgetExceeded

    with pytest.raises(BudgetExceeded, match="size"):
        pebbling_number_rooted(W5, 1, 3, budget=10)


def test_rooted_monotone_and_plus_four_probe():
    # pi_{t+1}(G,r) <= pi_t(G,r) + 4 is an empirical probe, not a known result
    failures = []
    for g in list(enumerate_graphs(5, FAMILY)) + [cycle(5), W5]:
        for r in range(g.n):
            vals = [pebbling_number_rooted(g, r, t)[0] for t in (1, 2, 3)]
            assert vals == sorted(vals)
            failures += [(g, r) for a, b in zip(vals, vals[1:]) if b > a + 4]
    assert failures == []
