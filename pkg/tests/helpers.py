"""Small graph builders and a naive reference search used as an independent oracle.

The oracle works on plain dict-of-sets adjacency with its own contraction
code so that it shares nothing with the package beyond the input graphs.
"""

from __future__ import annotations

from contrakt.graph import LabeledGraph


def G(edges_text: str = "", isolated: str = "") -> LabeledGraph:
    """``G("a-b b-c", "d")`` is the path a-b-c plus an isolated d."""
    edges = [tuple(tok.split("-")) for tok in edges_text.split()]
    return LabeledGraph(isolated.split(), edges)


def _adj(g: LabeledGraph) -> dict[str, set[str]]:
    adj = {v: set() for v in g.vertices}
    for a, b in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _key(adj) -> tuple:
    return tuple(sorted((v, tuple(sorted(n))) for v, n in adj.items()))


def _naive_contract(adj, u, v):
    out = {x: set(n) for x, n in adj.items() if x != v}
    for x in out:
        out[x].discard(v)
    out[u] |= adj[v] - {u, v}
    for x in adj[v] - {u}:
        out[x].add(u)
    return out


def reachable(g: LabeledGraph, depth: int) -> dict[tuple, list]:
    """Every graph reachable with exactly ``depth`` contractions, with one sequence each."""
    level = {_key(_adj(g)): (_adj(g), [])}
    for _ in range(depth):
        nxt = {}
        for adj, seq in level.values():
            for u in adj:
                for v in adj[u]:
                    a = _naive_contract(adj, u, v)
                    nxt.setdefault(_key(a), (a, seq + [(u, v)]))
        level = nxt
    return {k: s for k, (_, s) in level.items()}


def naive_contractible(g: LabeledGraph, h: LabeledGraph) -> bool:
    if not h.vertices <= g.vertices:
        return False
    return _key(_adj(h)) in reachable(g, g.n - h.n)


def naive_mcc_min(g: LabeledGraph, h: LabeledGraph, kmax: int) -> int | None:
    """Smallest |s1|+|s2| <= kmax with g/s1 == h/s2, or None."""
    for total in range(kmax + 1):
        for a in range(total + 1):
            if a > g.n - 1 or total - a > h.n - 1:
                continue
            if reachable(g, a).keys() & reachable(h, total - a).keys():
                return total
    return None
