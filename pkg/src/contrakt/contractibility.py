"""Labeled Contractibility: is H obtainable from G by labeled contractions?

Two exact solvers are provided.  :func:`solve_branching` is the bounded search
tree driven by a minimum-degree vertex, running in ``O((d + 2k)^k (n + m))``
for degeneracy ``d`` and ``k = |V(G)| - |V(H)|``.  :func:`solve_xp` tries every
contraction that removes a vertex outside ``V(H)`` and is used as its oracle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

from .errors import BudgetTooLarge
from .graph import (
    Contraction,
    ContractionSequence,
    Label,
    LabeledGraph,
    apply_sequence,
    components,
    contract_adj,
    degeneracy,
    induced_subgraph,
)

XP_DEFAULT_CAP = 8

Adj = dict[Label, set[Label]]


def budget_cap(default: int) -> int:
    """Brute-force cap, overridable through ``CONTRAKT_BUDGET_CAP``."""
    raw = os.environ.get("CONTRAKT_BUDGET_CAP")
    return int(raw) if raw else default


@dataclass
class SearchStats:
    nodes_explored: int = 0
    max_depth: int = 0
    max_children: int = 0
    # Filled only when auditing: nodes whose child count exceeded the bound.
    bound_violations: int = 0

    def merge(self, other: "SearchStats") -> None:
        self.nodes_explored += other.nodes_explored
        self.max_depth = max(self.max_depth, other.max_depth)
        self.max_children = max(self.max_children, other.max_children)
        self.bound_violations += other.bound_violations


@dataclass
class ContractibilityResult:
    decision: bool
    certificate: ContractionSequence | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def __bool__(self) -> bool:
        return self.decision


def _copy(adj: Adj) -> Adj:
    return {u: set(ns) for u, ns in adj.items()}


def _frozen(adj: Adj) -> frozenset:
    return frozenset((u, frozenset(ns)) for u, ns in adj.items())


def _current_degeneracy(adj: Adj) -> int:
    return degeneracy(LabeledGraph.from_adjacency(adj))[0]


def _has_forbidden_edge(G: Adj, H: Adj) -> bool:
    # An edge between two vertices of H that H lacks can never be removed.
    for x, hx in H.items():
        for y in G[x]:
            if y in H and y not in hx:
                return True
    return False


def _twin_classes(G: Adj, H: Adj) -> dict[Label, int]:
    """Group vertices that are twins in both graphs and agree on membership in H.

    Swapping two such vertices is an automorphism of the pair (G, H).
    """
    cls: dict[Label, int] = {}
    groups: dict[tuple, int] = {}
    for v, ns in G.items():
        hv = H.get(v)
        key = ("open", frozenset(ns), None if hv is None else frozenset(hv))
        cls[v] = groups.setdefault(key, len(groups))
    counts: dict[int, int] = {}
    for c in cls.values():
        counts[c] = counts.get(c, 0) + 1
    for v, ns in G.items():
        if counts[cls[v]] > 1:
            continue
        hv = H.get(v)
        key = ("closed", frozenset(ns | {v}), None if hv is None else frozenset(hv | {v}))
        cls[v] = groups.setdefault(key, len(groups))
    return cls


def _dedupe_symmetric(branches: list[Contraction], G: Adj, H: Adj) -> list[Contraction]:
    cls = _twin_classes(G, H)
    seen = set()
    out = []
    for c in branches:
        a, b = cls[c.kept], cls[c.removed]
        key = ("same", a) if a == b else (a, b)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


class _Branching:
    def __init__(self, memo: bool, audit: bool, prune: bool = False, symmetry: bool = False):
        self.prune = prune
        self.symmetry = symmetry
        self.stats = SearchStats()
        self.path: list[Contraction] = []
        self.memo: set | None = set() if memo else None
        self.audit = audit

    def children(self, G: Adj, H: Adj, k: int) -> tuple[list[Contraction] | bool, Adj, Adj, Label | None]:
        """Strip settled vertices, then return ``(branches, G, H, u)``.

        ``branches`` is a bool instead of a list when the node is decided
        without branching.
        """
        if self.prune and _has_forbidden_edge(G, H):
            return False, G, H, None
        h_copied = False
        while True:
            if G == H:
                return True, G, H, None
            if k <= 0 or len(G) - len(H) > k:
                return False, G, H, None
            u = min(G, key=lambda x: (len(G[x]), x))
            NG = G[u]
            if u not in H:
                return [Contraction(v, u) for v in sorted(NG)], G, H, u
            NH = H[u]
            if NG == NH:
                # Nothing later can change u's neighborhood: drop it from both.
                if not h_copied:
                    H = _copy(H)
                    h_copied = True
                for w in G.pop(u):
                    G[w].discard(u)
                for w in H.pop(u):
                    H[w].discard(u)
                continue
            missing = NH - NG
            if missing:
                v = min(missing)
                out = [Contraction(v, w) for w in sorted(G[v]) if w not in H]
                out += [Contraction(u, w) for w in sorted(NG) if w not in H]
                return out, G, H, u
            if any(w in H and w not in NH for w in NG):
                # u and w are both kept but joined by an edge H lacks.
                return False, G, H, None
            v = min(w for w in NG if w not in H)
            out = []
            if not any(x in H and x != u and x not in NH for x in G[v]):
                out.append(Contraction(u, v))
            for w in sorted(G[v]):
                if w == u or (w in H and w not in NH):
                    continue
                out.append(Contraction(w, v))
            return out, G, H, u

    def run(self, G: Adj, H: Adj, k: int, depth: int) -> bool:
        self.stats.nodes_explored += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        key = None
        if self.memo is not None:
            key = (_frozen(G), _frozen(H))
            if key in self.memo:
                return False
        branches, G, H, u = self.children(G, H, k)
        if isinstance(branches, bool):
            if not branches and key is not None:
                self.memo.add(key)
            return branches
        if self.symmetry:
            branches = _dedupe_symmetric(branches, G, H)
        self.stats.max_children = max(self.stats.max_children, len(branches))
        if self.audit:
            bound = max(len(G[u]), 2 * k, _current_degeneracy(G) + 2 * k)
            if len(branches) > bound:
                self.stats.bound_violations += 1
        for c in branches:
            child = _copy(G)
            contract_adj(child, c.kept, c.removed)
            self.path.append(c)
            if self.run(child, H, k - 1, depth + 1):
                return True
            self.path.pop()
        if key is not None:
            self.memo.add(key)
        return False


def _certified(g: LabeledGraph, h: LabeledGraph, cert: list[Contraction], stats: SearchStats) -> ContractibilityResult:
    cert = tuple(cert)
    if apply_sequence(g, cert) != h:
        raise AssertionError("solver produced an invalid certificate")
    return ContractibilityResult(True, cert, stats)


def solve_branching(
    g: LabeledGraph,
    h: LabeledGraph,
    memo: bool = False,
    audit: bool = False,
    prune: bool = True,
    symmetry: bool = True,
) -> ContractibilityResult:
    """Decide whether ``h`` is a labeled contraction of ``g``.

    None of the options changes the decision.  ``memo`` caches failed
    (G, H) states.  ``prune`` rejects any node where two vertices of ``h``
    share an edge ``h`` lacks.  ``symmetry`` keeps one branch per orbit
    under swaps of vertices that are twins in both graphs.
    ``audit`` counts branch nodes whose child count exceeds
    ``max(deg(u), 2k, degeneracy + 2k)`` (expected to stay zero).
    """
    if not h.vertices <= g.vertices:
        return ContractibilityResult(False)
    solver = _Branching(memo, audit, prune, symmetry)
    k = g.n - h.n
    if solver.run(g.adjacency(), h.adjacency(), k, 0):
        return _certified(g, h, solver.path, solver.stats)
    return ContractibilityResult(False, None, solver.stats)


def solve_xp(g: LabeledGraph, h: LabeledGraph, cap: int | None = None) -> ContractibilityResult:
    """Exhaustive search over contractions that remove a vertex outside ``V(h)``.

    Raises :class:`BudgetTooLarge` when ``|V(g)| - |V(h)|`` exceeds ``cap``.
    """
    if not h.vertices <= g.vertices:
        return ContractibilityResult(False)
    k = g.n - h.n
    cap = budget_cap(XP_DEFAULT_CAP) if cap is None else cap
    if k > cap:
        raise BudgetTooLarge(f"k={k} exceeds the exhaustive-search cap {cap}; use the branching solver")
    stats = SearchStats()
    target = h.adjacency()
    extra = g.vertices - h.vertices
    dead: set = set()
    path: list[Contraction] = []

    def dfs(G: Adj, depth: int) -> bool:
        stats.nodes_explored += 1
        stats.max_depth = max(stats.max_depth, depth)
        if depth == k:
            return G == target
        key = _frozen(G)
        if key in dead:
            return False
        for y in sorted(x for x in G if x in extra):
            for x in sorted(G[y]):
                child = _copy(G)
                contract_adj(child, x, y)
                path.append(Contraction(x, y))
                if dfs(child, depth + 1):
                    return True
                path.pop()
        dead.add(key)
        return False

    if dfs(g.adjacency(), 0):
        return _certified(g, h, path, stats)
    return ContractibilityResult(False, None, stats)


Solver = Callable[[LabeledGraph, LabeledGraph], ContractibilityResult]


def solve_by_components(g: LabeledGraph, h: LabeledGraph, inner: Solver = solve_branching) -> ContractibilityResult:
    """Split into matched connected components and solve each pair with ``inner``.

    Components correspond through their common vertices; any component of
    ``g`` without exactly one matching component of ``h`` (or vice versa)
    makes the instance infeasible.
    """
    if not h.vertices <= g.vertices:
        return ContractibilityResult(False)
    g_comps = components(g)
    h_comps = components(h)
    if len(g_comps) != len(h_comps):
        return ContractibilityResult(False)
    where = {x: i for i, comp in enumerate(g_comps) for x in comp}
    pairs: dict[int, frozenset[Label]] = {}
    for comp in h_comps:
        hosts = {where[x] for x in comp}
        if len(hosts) != 1:
            return ContractibilityResult(False)
        i = hosts.pop()
        if i in pairs:
            return ContractibilityResult(False)
        pairs[i] = comp
    if len(pairs) != len(g_comps):
        return ContractibilityResult(False)
    stats = SearchStats()
    cert: list[Contraction] = []
    for i, gc in enumerate(g_comps):
        res = inner(induced_subgraph(g, gc), induced_subgraph(h, pairs[i]))
        stats.merge(res.stats)
        if not res.decision:
            return ContractibilityResult(False, None, stats)
        cert.extend(res.certificate)
    return _certified(g, h, cert, stats)


def solve(g: LabeledGraph, h: LabeledGraph, engine: str = "auto") -> ContractibilityResult:
    """Dispatch on ``engine``: ``branching``, ``xp`` or ``auto`` (xp when k <= 3)."""
    if engine == "branching":
        return solve_branching(g, h)
    if engine == "xp":
        return solve_xp(g, h)
    if engine == "auto":
        if h.vertices <= g.vertices and g.n - h.n <= 3:
            return solve_xp(g, h)
        return solve_branching(g, h)
    raise ValueError(f"unknown engine {engine!r}")
