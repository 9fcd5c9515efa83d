from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contrakt import samples
from contrakt.contractibility import solve_branching
from contrakt.errors import BudgetTooLarge, NotSquare
from contrakt.graph import apply_sequence, union
from contrakt.mcc import (
    component_match,
    min_cost_perfect_matching,
    solve_mcc,
    solve_mcc_branching,
    solve_mcc_bruteforce,
    solve_mcc_components,
)
from contrakt.reductions import contractibility_as_mcc
from helpers import G, naive_mcc_min

P3_ABC = G("a-b b-c")
P3_ADC = G("a-d d-c")
SOLVERS = [solve_mcc_bruteforce, solve_mcc_branching, solve_mcc_components]


def _check(g, h, res):
    assert apply_sequence(g, res.s1) == res.common == apply_sequence(h, res.s2)


@pytest.mark.parametrize("solver", SOLVERS)
def test_identical_graphs(solver):
    res = solver(P3_ABC, P3_ABC, 0)
    assert res.decision and res.common == P3_ABC and res.k_used == 0


@pytest.mark.parametrize("solver", SOLVERS)
def test_swapped_middle_vertex(solver):
    # Minimum of 2 frozen from the naive enumerator.
    assert naive_mcc_min(P3_ABC, P3_ADC, 4) == 2
    assert not solver(P3_ABC, P3_ADC, 1).decision
    res = solver(P3_ABC, P3_ADC, 2)
    assert res.decision and res.k_used == 2
    assert res.common == G("a-c")
    _check(P3_ABC, P3_ADC, res)
    assert res.max_common_size(P3_ABC, P3_ADC) == 2


@pytest.mark.parametrize("solver", SOLVERS)
def test_disjoint_label_sets(solver):
    g, h = G("a-b"), G("x-y")
    for k in range(4):
        assert not solver(g, h, k).decision


@pytest.mark.parametrize("solver", SOLVERS)
def test_extra_pendant(solver):
    res = solver(G("a-b b-c a-p"), P3_ABC, 1)
    assert res.decision and res.s1 == (("a", "p"),) and res.s2 == ()


def test_contractibility_embedding():
    g, h = G("a-b b-c c-d"), G("a-b b-d")
    assert solve_branching(g, h).decision
    g, h, k = contractibility_as_mcc(g, h)
    assert k == 1
    res = solve_mcc_branching(g, h, k)
    assert res.decision and res.s2 == ()


def test_bruteforce_cap(monkeypatch):
    with pytest.raises(BudgetTooLarge):
        solve_mcc_bruteforce(P3_ABC, P3_ADC, 7)
    monkeypatch.setenv("CONTRAKT_BUDGET_CAP", "1")
    with pytest.raises(BudgetTooLarge):
        solve_mcc_bruteforce(P3_ABC, P3_ADC, 2)


def test_matching_examples():
    assert min_cost_perfect_matching([[3]]) == ([0], 3)
    assert min_cost_perfect_matching([[0, math.inf], [math.inf, 0]]) == ([0, 1], 0)
    # Diagonal total 3 is the minimum over all 6 permutations.
    assert min_cost_perfect_matching([[1, 2, 3], [2, 1, 3], [3, 3, 1]]) == ([0, 1, 2], 3)
    assert min_cost_perfect_matching([[math.inf, math.inf], [0, 0]]) is None
    assert min_cost_perfect_matching([]) == ([], 0)
    with pytest.raises(NotSquare):
        min_cost_perfect_matching([[1, 2]])


def test_components_examples():
    assert solve_mcc_components(P3_ABC, P3_ADC, 2).decision
    # Components with crossed labels: only one pairing is feasible.
    g = union(G("a-b b-c"), G("x-y y-z"))
    h = union(G("x-w w-z"), G("a-c"))
    assert naive_mcc_min(g, h, 4) == 3
    match = component_match(g, h, 4)
    assert match.total == 3
    assert sorted(c for _, _, c in match.pairs) == [1, 2]
    res = solve_mcc_components(g, h, 3)
    assert res.decision and res.k_used == 3
    _check(g, h, res)
    assert not solve_mcc_components(g, h, 2).decision
    assert not solve_mcc_components(g, G("a-b b-c"), 4).decision


def test_engine_dispatch():
    assert solve_mcc(P3_ABC, P3_ADC, 2, "bruteforce").decision
    assert solve_mcc(P3_ABC, P3_ADC, 2, "branching").decision
    assert solve_mcc(union(P3_ABC, G("x-y")), union(P3_ADC, G("x-y")), 2).decision
    with pytest.raises(ValueError):
        solve_mcc(P3_ABC, P3_ADC, 2, "nope")


def _pair(seed, labels=6):
    rng = random.Random(seed)
    pool = samples.labels(rng.randint(2, labels))
    g = samples.random_graph(rng, rng.sample(pool, rng.randint(1, len(pool))), rng.random())
    h = samples.random_graph(rng, rng.sample(pool, rng.randint(1, len(pool))), rng.random())
    return rng, g, h


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_branching_matches_bruteforce(seed):
    rng, g, h = _pair(seed)
    k = rng.randint(0, 4)
    a, b = solve_mcc_branching(g, h, k), solve_mcc_bruteforce(g, h, k)
    assert a.decision == b.decision
    if a.decision:
        assert a.k_used == b.k_used
        _check(g, h, a)
        _check(g, h, b)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_symmetry(seed):
    rng, g, h = _pair(seed)
    k = rng.randint(0, 4)
    for solver in (solve_mcc_branching, solve_mcc_bruteforce):
        a, b = solver(g, h, k), solver(h, g, k)
        assert a.decision == b.decision
        if a.decision:
            assert a.k_used == b.k_used


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_monotone_in_k_and_threshold(seed):
    _, g, h = _pair(seed, 5)
    decisions = [solve_mcc_branching(g, h, k).decision for k in range(5)]
    assert decisions == sorted(decisions)
    if any(decisions):
        kmin = decisions.index(True)
        res = solve_mcc_branching(g, h, kmin)
        assert kmin == g.n + h.n - 2 * res.max_common_size(g, h)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_branch_counts_within_bounds(seed):
    rng, g, h = _pair(seed)
    res = solve_mcc_branching(g, h, rng.randint(0, 4), audit=True)
    assert res.stats.bound_violations == 0
