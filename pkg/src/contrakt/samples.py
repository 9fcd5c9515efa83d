"""Seeded random instances for oracle cross-checks and benchmarks."""

from __future__ import annotations

import itertools
import random

from .graph import Contraction, ContractionSequence, LabeledGraph, contract


def labels(n: int, prefix: str = "v") -> list[str]:
    return [f"{prefix}{i}" for i in range(n)]


def random_graph(rng: random.Random, vertices: list[str], p: float) -> LabeledGraph:
    return LabeledGraph(vertices, [(a, b) for a, b in itertools.combinations(vertices, 2) if rng.random() < p])


def random_connected_graph(rng: random.Random, vertices: list[str], p: float) -> LabeledGraph:
    """A random spanning tree plus independent extra edges."""
    order = list(vertices)
    rng.shuffle(order)
    edges = {tuple(sorted((v, rng.choice(order[:i])))) for i, v in enumerate(order) if i}
    edges |= {(a, b) for a, b in itertools.combinations(sorted(vertices), 2) if rng.random() < p}
    return LabeledGraph(vertices, edges)


def random_sequence(rng: random.Random, g: LabeledGraph, steps: int) -> ContractionSequence:
    """Up to ``steps`` random contractions (fewer if edges run out)."""
    out = []
    for _ in range(steps):
        edges = g.edge_list()
        if not edges:
            break
        u, v = rng.choice(edges)
        c = Contraction(u, v) if rng.random() < 0.5 else Contraction(v, u)
        g = contract(g, c)
        out.append(c)
    return tuple(out)


def toggle_random_pair(rng: random.Random, g: LabeledGraph) -> LabeledGraph:
    """Flip one vertex pair between edge and non-edge."""
    if g.n < 2:
        return g
    a, b = rng.sample(sorted(g.vertices), 2)
    adj = g.adjacency()
    if b in adj[a]:
        adj[a].discard(b)
        adj[b].discard(a)
    else:
        adj[a].add(b)
        adj[b].add(a)
    return LabeledGraph.from_adjacency(adj)


def bounded_degeneracy_graph(rng: random.Random, n: int, d: int, prefix: str = "v") -> LabeledGraph:
    """Each new vertex attaches to at most ``d`` earlier ones, so degeneracy is at most ``d``."""
    vs = labels(n, prefix)
    edges = []
    for i in range(1, n):
        for j in rng.sample(range(i), min(i, rng.randint(1, d))):
            edges.append((vs[i], vs[j]))
    return LabeledGraph(vs, edges)


def bounded_degree_graph(rng: random.Random, n: int, delta: int, prefix: str = "v", tries: int = 4) -> LabeledGraph:
    """Connected random graph with max degree at most ``delta`` (a random tree first, then extra edges)."""
    vs = labels(n, prefix)
    deg = dict.fromkeys(vs, 0)
    edges = set()
    for i in range(1, n):
        options = [u for u in vs[:i] if deg[u] < delta]
        u = rng.choice(options)
        edges.add((u, vs[i]))
        deg[u] += 1
        deg[vs[i]] += 1
    for _ in range(tries * n):
        a, b = rng.sample(vs, 2)
        if deg[a] < delta and deg[b] < delta and (a, b) not in edges and (b, a) not in edges:
            edges.add((a, b))
            deg[a] += 1
            deg[b] += 1
    return LabeledGraph(vs, edges)


def planted_matching_sequence(rng: random.Random, g: LabeledGraph, steps: int) -> ContractionSequence:
    """Up to ``steps`` contractions along a random matching of ``g``."""
    used: set[str] = set()
    edges = g.edge_list()
    rng.shuffle(edges)
    out = []
    for u, v in edges:
        if len(out) == steps:
            break
        if u in used or v in used:
            continue
        used |= {u, v}
        out.append(Contraction(u, v) if rng.random() < 0.5 else Contraction(v, u))
    return tuple(out)

