"""Maximum Common Labeled Contraction.

Given G, H and a budget k, find sequences S1 on G and S2 on H with
``G/S1 == H/S2`` and ``|S1| + |S2| <= k``.  Every solver here returns a
solution of minimum total length, so ``k_used`` is the exact distance when the
decision is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .contractibility import SearchStats, budget_cap
from .errors import BudgetTooLarge, NotSquare
from .graph import (
    Contraction,
    ContractionSequence,
    LabeledGraph,
    apply_sequence,
    components,
    contract,
    induced_subgraph,
    max_degree,
)

BRUTEFORCE_DEFAULT_CAP = 6
INFEASIBLE = math.inf


@dataclass
class MccResult:
    decision: bool
    s1: ContractionSequence | None = None
    s2: ContractionSequence | None = None
    common: LabeledGraph | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def k_used(self) -> int | None:
        if not self.decision:
            return None
        return len(self.s1) + len(self.s2)

    def max_common_size(self, g: LabeledGraph, h: LabeledGraph) -> int | None:
        if not self.decision:
            return None
        return (g.n + h.n - self.k_used) // 2

    def swapped(self) -> "MccResult":
        return MccResult(self.decision, self.s2, self.s1, self.common, self.stats)

    def __bool__(self) -> bool:
        return self.decision


def _certified(g, h, s1, s2, stats) -> MccResult:
    s1, s2 = tuple(s1), tuple(s2)
    m1 = apply_sequence(g, s1)
    if m1 != apply_sequence(h, s2):
        raise AssertionError("solver produced sequences with different results")
    return MccResult(True, s1, s2, m1, stats)


def _moves(g: LabeledGraph):
    for u, v in g.edge_list():
        yield Contraction(u, v)
        yield Contraction(v, u)


class _Levels:
    """Graphs reachable from a root by exactly ``i`` contractions, with parents."""

    def __init__(self, root: LabeledGraph):
        self.parent: dict[LabeledGraph, tuple[LabeledGraph, Contraction] | None] = {root: None}
        self.levels: list[set[LabeledGraph]] = [{root}]

    def upto(self, depth: int) -> None:
        while len(self.levels) <= depth:
            nxt = set()
            for g in self.levels[-1]:
                for c in _moves(g):
                    child = contract(g, c)
                    if child not in self.parent:
                        self.parent[child] = (g, c)
                        nxt.add(child)
            self.levels.append(nxt)

    def path(self, g: LabeledGraph) -> list[Contraction]:
        out = []
        while self.parent[g] is not None:
            g, c = self.parent[g]
            out.append(c)
        return out[::-1]


def solve_mcc_bruteforce(g: LabeledGraph, h: LabeledGraph, k: int, cap: int | None = None) -> MccResult:
    """Exhaustive search, smallest total first, over every budget split."""
    cap = budget_cap(BRUTEFORCE_DEFAULT_CAP) if cap is None else cap
    if k > cap:
        raise BudgetTooLarge(f"k={k} exceeds the brute-force cap {cap}")
    lg, lh = _Levels(g), _Levels(h)
    stats = SearchStats()
    for total in range(k + 1):
        for i in range(total + 1):
            j = total - i
            if i >= max(g.n, 1) or j >= max(h.n, 1):
                continue
            lg.upto(i)
            lh.upto(j)
            common = lg.levels[i] & lh.levels[j]
            if common:
                m = min(common, key=lambda x: (sorted(x.vertices), x.edge_list()))
                stats.nodes_explored = len(lg.parent) + len(lh.parent)
                stats.max_depth = total
                return _certified(g, h, lg.path(m), lh.path(m), stats)
    stats.nodes_explored = len(lg.parent) + len(lh.parent)
    return MccResult(False, stats=stats)


class _MccBranching:
    def __init__(self, k: int, delta: int, audit: bool):
        self.stats = SearchStats()
        self.s1: list[Contraction] = []
        self.s2: list[Contraction] = []
        self.failed: dict[tuple[LabeledGraph, LabeledGraph], int] = {}
        self.audit = audit
        self.vertex_bound = (k + 1) * delta
        self.edge_bound = 8 * (k + 1) * delta

    def branches(self, G: LabeledGraph, H: LabeledGraph) -> tuple[str, list[tuple[int, Contraction]]]:
        only_g = G.vertices - H.vertices
        if only_g:
            v = min(only_g)
            return "vertex", [(1, Contraction(w, v)) for w in sorted(G.neighbors(v))]
        only_h = H.vertices - G.vertices
        if only_h:
            v = min(only_h)
            return "vertex", [(2, Contraction(w, v)) for w in sorted(H.neighbors(v))]
        diff = sorted(G.edges ^ H.edges)
        u, v = diff[0]
        out = []
        for side, X in ((1, G), (2, H)):
            seen = set()
            for a in (u, v):
                for w in sorted(X.neighbors(a)):
                    for c in (Contraction(a, w), Contraction(w, a)):
                        if c not in seen:
                            seen.add(c)
                            out.append((side, c))
        out.sort(key=lambda sc: (sc[0], min(sc[1]), sc[1]))
        return "edge", out

    def run(self, G: LabeledGraph, H: LabeledGraph, k: int, depth: int) -> bool:
        self.stats.nodes_explored += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        if G == H:
            return True
        lower = len(G.vertices ^ H.vertices)
        if k <= 0 or lower > k:
            return False
        if self.failed.get((G, H), -1) >= k:
            return False
        kind, options = self.branches(G, H)
        self.stats.max_children = max(self.stats.max_children, len(options))
        if self.audit:
            bound = self.vertex_bound if kind == "vertex" else self.edge_bound
            if len(options) > bound:
                self.stats.bound_violations += 1
        for side, c in options:
            if side == 1:
                self.s1.append(c)
                ok = self.run(contract(G, c), H, k - 1, depth + 1)
                if ok:
                    return True
                self.s1.pop()
            else:
                self.s2.append(c)
                ok = self.run(G, contract(H, c), k - 1, depth + 1)
                if ok:
                    return True
                self.s2.pop()
        self.failed[(G, H)] = k
        return False


def solve_mcc_branching(g: LabeledGraph, h: LabeledGraph, k: int, audit: bool = False) -> MccResult:
    """Bounded search tree in ``k + max degree``.

    A vertex present in only one graph is contracted into one of its
    neighbors; otherwise an edge in exactly one graph forces a contraction
    incident to one of its endpoints, in either graph.  Budgets are tried in
    increasing order so the first solution found is minimal.  ``audit``
    counts nodes whose child count exceeds ``(k+1)*Delta`` (vertex branches)
    or ``8(k+1)*Delta`` (edge branches).
    """
    delta = max(max_degree(g), max_degree(h))
    solver = _MccBranching(k, delta, audit)
    lower = len(g.vertices ^ h.vertices)
    for budget in range(lower, k + 1):
        if solver.run(g, h, budget, 0):
            return _certified(g, h, solver.s1, solver.s2, solver.stats)
    return MccResult(False, stats=solver.stats)


def min_cost_perfect_matching(costs: Sequence[Sequence[float]]) -> tuple[list[int], float] | None:
    """Minimum-cost perfect matching of a square cost matrix.

    Entries equal to ``math.inf`` (or None) are forbidden pairs.  Returns
    ``(assignment, total)`` where ``assignment[i]`` is the column matched to
    row ``i``, or None when no finite perfect matching exists.
    """
    n = len(costs)
    if any(len(row) != n for row in costs):
        raise NotSquare(f"expected a {n}x{n} matrix")
    if n == 0:
        return [], 0
    arr = np.array([[INFEASIBLE if c is None else c for c in row] for row in costs], dtype=float)
    finite = np.isfinite(arr)
    if (arr[finite] < 0).any():
        raise ValueError("costs must be nonnegative")
    big = arr[finite].sum() + 1.0 if finite.any() else 1.0
    rows, cols = linear_sum_assignment(np.where(finite, arr, big))
    if not finite[rows, cols].all():
        return None
    total = arr[rows, cols].sum()
    total = int(total) if float(total).is_integer() else float(total)
    return [int(c) for c in cols], total


MccSolver = Callable[[LabeledGraph, LabeledGraph, int], MccResult]


@dataclass
class ComponentMatch:
    pairs: list[tuple[frozenset, frozenset, float]]

    @property
    def total(self) -> float:
        return sum(c for _, _, c in self.pairs)


def _pair_results(g, h, k, inner):
    g_comps, h_comps = components(g), components(h)
    stats = SearchStats()
    results: dict[tuple[int, int], MccResult] = {}
    costs = []
    for i, gc in enumerate(g_comps):
        row = []
        for j, hc in enumerate(h_comps):
            if not gc & hc:
                row.append(INFEASIBLE)
                continue
            res = inner(induced_subgraph(g, gc), induced_subgraph(h, hc), k)
            stats.merge(res.stats)
            results[i, j] = res
            row.append(res.k_used if res.decision else INFEASIBLE)
        costs.append(row)
    return g_comps, h_comps, costs, results, stats


def component_match(g: LabeledGraph, h: LabeledGraph, k: int, inner: MccSolver = solve_mcc_branching) -> ComponentMatch | None:
    """The minimum-cost pairing of components, or None if counts differ or none is feasible."""
    g_comps, h_comps, costs, _, _ = _pair_results(g, h, k, inner)
    if len(g_comps) != len(h_comps):
        return None
    matched = min_cost_perfect_matching(costs)
    if matched is None:
        return None
    return ComponentMatch([(g_comps[i], h_comps[j], costs[i][j]) for i, j in enumerate(matched[0])])


def solve_mcc_components(g: LabeledGraph, h: LabeledGraph, k: int, inner: MccSolver = solve_mcc_branching) -> MccResult:
    """Solve each component pair exactly, then match components at minimum total cost.

    Every pair gets the full budget ``k``; pairs sharing no label are
    infeasible outright.
    """
    if len(components(g)) != len(components(h)):
        return MccResult(False)
    _, _, costs, results, stats = _pair_results(g, h, k, inner)
    matched = min_cost_perfect_matching(costs)
    if matched is None or matched[1] > k:
        return MccResult(False, stats=stats)
    s1: list[Contraction] = []
    s2: list[Contraction] = []
    for i, j in enumerate(matched[0]):
        s1.extend(results[i, j].s1)
        s2.extend(results[i, j].s2)
    return _certified(g, h, s1, s2, stats)


def solve_mcc(g: LabeledGraph, h: LabeledGraph, k: int, engine: str = "auto") -> MccResult:
    """Dispatch on ``engine``: ``bruteforce``, ``branching`` or ``auto``.

    ``auto`` splits disconnected inputs into components and uses the
    branching solver per pair.
    """
    if engine == "bruteforce":
        return solve_mcc_bruteforce(g, h, k)
    if engine == "branching":
        return solve_mcc_branching(g, h, k)
    if engine == "auto":
        if len(components(g)) > 1 or len(components(h)) > 1:
            return solve_mcc_components(g, h, k)
        return solve_mcc_branching(g, h, k)
    raise ValueError(f"unknown engine {engine!r}")
