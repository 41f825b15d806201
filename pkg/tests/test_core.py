import random
from itertools import combinations
from math import ceil

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebbling.core import (
    Configuration,
    Move,
    PebblingError,
    Solution,
    apply_move,
    cheapest_solution_cost,
    find_solution,
    is_solvable,
    potential,
    verify_solution,
)
from pebbling.corpus import complete, path, random_connected_graph, star, wheel

from .oracles import naive_solvable

P3 = path(3)
W5 = wheel(5)


def test_potential_examples():
    assert potential(Configuration.of(0, 1, 1, 2, 7)) == 4
    assert potential(Configuration.of(0, 0, 0)) == 0
    assert potential(Configuration.of(6, 0)) == 3


def test_apply_move():
    assert apply_move(complete(3), Configuration.of(2, 0, 0), Move(0, 1)).counts == (0, 1, 0)
    edge = path(2)
    after = apply_move(edge, Configuration.of(3, 1), Move(0, 1))
    assert after.counts == (1, 2) and after.size == 3
    with pytest.raises(PebblingError):
        apply_move(edge, Configuration.of(1, 0), Move(0, 1))
    with pytest.raises(PebblingError, match="adjacent"):
        apply_move(P3, Configuration.of(4, 0, 0), Move(0, 2))


def test_is_solvable_examples():
    assert is_solvable(P3, Configuration.of(4, 0, 0), 2, 1)
    assert not is_solvable(P3, Configuration.of(3, 0, 0), 2, 1)
    odd = Configuration.of(0, 3, 1, 1, 1)
    assert potential(odd) == 1
    assert not is_solvable(W5, odd, 0, 2)


def test_t_zero_rejected():
    with pytest.raises(PebblingError):
        is_solvable(P3, Configuration.of(4, 0, 0), 2, 0)


def test_find_solution_examples():
    sol = find_solution(P3, Configuration.of(4, 0, 0), 2, 1)
    assert sol.moves == (Move(0, 1), Move(0, 1), Move(1, 2))
    assert find_solution(P3, Configuration.of(0, 1, 3), 2, 2).moves == ()
    assert find_solution(W5, Configuration.of(0, 3, 1, 1, 1), 0, 2) is None


def test_verify_solution_examples():
    c = Configuration.of(4, 0, 0)
    sol = Solution(2, 1, (Move(0, 1), Move(0, 1), Move(1, 2)))
    assert verify_solution(P3, c, sol)
    assert not verify_solution(P3, c, Solution(2, 2, sol.moves))
    bad = verify_solution(P3, c, Solution(2, 1, (Move(1, 2), Move(0, 1), Move(0, 1))))
    assert not bad and bad.index == 0


def test_cheapest_cost_examples():
    assert cheapest_solution_cost(P3, Configuration.of(0, 2, 0), 2) == 2
    assert cheapest_solution_cost(P3, Configuration.of(4, 0, 0), 2) == 4
    assert cheapest_solution_cost(P3, Configuration.of(0, 0, 1), 2) == 0
    assert cheapest_solution_cost(P3, Configuration.of(3, 0, 0), 2) is None
    # a 2-slide (r, q1, q2) with 1 and 2 pebbles costs 3
    assert cheapest_solution_cost(P3, Configuration.of(2, 1, 0), 2) == 3


def _random_instances(seed, count, max_n=5, max_size=8):
    rng = random.Random(seed)
    for _ in range(count):
        g = random_connected_graph(rng.randint(2, max_n), rng)
        counts = [0] * g.n
        for _ in range(rng.randint(0, max_size)):
            counts[rng.randrange(g.n)] += 1
        yield g, Configuration(tuple(counts)), rng.randrange(g.n), rng.randint(1, 3)


def test_oracle_matches_naive_search():
    for g, c, r, t in _random_instances(11, 600):
        assert is_solvable(g, c, r, t) == naive_solvable(g, list(c.counts), r, t), (g, c, r, t)


def test_oracle_matches_naive_exhaustively_on_w5():
    for size in range(0, 9):
        for cut in combinations(range(size + 4), 4):
            bounds = (-1,) + cut + (size + 4,)
            counts = tuple(bounds[i + 1] - bounds[i] - 1 for i in range(5))
            for r in range(5):
                for t in (1, 2, 3):
                    assert is_solvable(W5, Configuration(counts), r, t) == naive_solvable(
                        W5, list(counts), r, t
                    )


def test_find_solution_agrees_and_verifies():
    for g, c, r, t in _random_instances(12, 400, max_n=7, max_size=14):
        sol = find_solution(g, c, r, t)
        assert (sol is not None) == is_solvable(g, c, r, t)
        if sol is not None:
            assert verify_solution(g, c, sol)
            assert len(sol.moves) <= c.size - t


def test_empty_root_pruning_and_monotonicity():
    rng = random.Random(13)
    for g, c, r, t in _random_instances(13, 400, max_n=6, max_size=12):
        if c[r] == 0 and potential(c) < t:
            assert not is_solvable(g, c, r, t)
        if is_solvable(g, c, r, t):
            bigger = c.add(rng.randrange(g.n))
            assert is_solvable(g, bigger, r, t)


@st.composite
def configs_over_n(draw):
    n = draw(st.integers(1, 12))
    counts = draw(st.lists(st.integers(0, 12), min_size=n, max_size=n))
    return n, counts


@settings(max_examples=500)
@given(configs_over_n())
def test_potential_lower_bound(nc):
    n, counts = nc
    y = sum(counts) - n
    if y >= 0:
        z = counts.count(0)
        assert potential(counts) >= ceil((y + z) / 2)


def test_each_move_drops_size_by_one():
    for g, c, r, t in _random_instances(14, 200, max_n=6, max_size=12):
        sol = find_solution(g, c, r, t)
        if sol:
            cur = c
            for mv in sol.moves:
                nxt = apply_move(g, cur, mv)
                assert nxt.size == cur.size - 1
                cur = nxt


def test_star_leaf_two_fold():
    s = star(3)
    assert not is_solvable(s, Configuration.of(0, 0, 7, 1), 1, 2)
    assert is_solvable(s, Configuration.of(0, 0, 8, 1), 1, 2)
