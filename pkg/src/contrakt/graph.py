"""Vertex-labeled simple graphs and the labeled contraction operation.

A contraction ``(u, v)`` merges ``v`` into ``u``: ``v`` disappears and ``u``
inherits every neighbor of ``v``.  Labels are never renamed, so ``(u, v)`` and
``(v, u)`` generally produce different labeled graphs.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Iterator, NamedTuple

from .errors import NonEdge, UnknownLabel

Label = str


class Contraction(NamedTuple):
    kept: Label
    removed: Label

    def __str__(self) -> str:
        return f"({self.kept},{self.removed})"


ContractionSequence = tuple[Contraction, ...]


def _check_label(label: object) -> Label:
    if not isinstance(label, str) or not label or any(ch.isspace() for ch in label):
        raise ValueError(f"invalid label {label!r}: labels are nonempty strings without whitespace")
    return label


def as_sequence(steps: Iterable) -> ContractionSequence:
    """Normalize an iterable of ``(kept, removed)`` pairs into a sequence."""
    return tuple(s if isinstance(s, Contraction) else Contraction(*s) for s in steps)


class LabeledGraph:
    """Immutable simple undirected graph over unique string labels.

    Two graphs compare equal iff their vertex and edge sets are identical; the
    comparison is linear in ``n + m``.
    """

    __slots__ = ("_adj", "_index", "_hash", "_edges")

    def __init__(self, vertices: Iterable[Label] = (), edges: Iterable[tuple[Label, Label]] = ()):
        adj: dict[Label, set[Label]] = {}
        for v in vertices:
            adj.setdefault(_check_label(v), set())
        for u, v in edges:
            _check_label(u)
            _check_label(v)
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj = {u: frozenset(ns) for u, ns in adj.items()}
        self._index = None
        self._hash = None
        self._edges = None

    @classmethod
    def from_adjacency(cls, adj: dict[Label, Iterable[Label]]) -> "LabeledGraph":
        """Build from a symmetric adjacency map without per-label validation.

        Used on hot paths where the adjacency comes from another graph.
        """
        g = cls.__new__(cls)
        g._adj = {u: frozenset(ns) for u, ns in adj.items()}
        g._index = None
        g._hash = None
        g._edges = None
        return g

    @property
    def vertices(self) -> frozenset[Label]:
        return frozenset(self._adj)

    @property
    def edges(self) -> frozenset[tuple[Label, Label]]:
        """Edges as ``(smaller, larger)`` label pairs."""
        if self._edges is None:
            self._edges = frozenset((u, v) for u, ns in self._adj.items() for v in ns if u < v)
        return self._edges

    def edge_list(self) -> list[tuple[Label, Label]]:
        return sorted(self.edges)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(ns) for ns in self._adj.values()) // 2

    @property
    def index(self) -> dict[Label, int]:
        """Dense re-indexing of labels in sorted order."""
        if self._index is None:
            self._index = {u: i for i, u in enumerate(sorted(self._adj))}
        return self._index

    def neighbors(self, u: Label) -> frozenset[Label]:
        try:
            return self._adj[u]
        except KeyError:
            raise UnknownLabel(u) from None

    def closed_neighbors(self, u: Label) -> frozenset[Label]:
        return self.neighbors(u) | {u}

    def degree(self, u: Label) -> int:
        return len(self.neighbors(u))

    def has_edge(self, u: Label, v: Label) -> bool:
        ns = self._adj.get(u)
        return ns is not None and v in ns

    def adjacency(self) -> dict[Label, set[Label]]:
        """A fresh mutable copy of the adjacency map."""
        return {u: set(ns) for u, ns in self._adj.items()}

    def __contains__(self, u: object) -> bool:
        return u in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[Label]:
        return iter(sorted(self._adj))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._adj.items()))
        return self._hash

    def __repr__(self) -> str:
        verts = " ".join(sorted(self._adj))
        edges = " ".join(f"{u}-{v}" for u, v in self.edge_list())
        return f"LabeledGraph(V=[{verts}], E=[{edges}])"


def graph_equal(g: LabeledGraph, h: LabeledGraph) -> bool:
    return g == h


def contract_adj(adj: dict[Label, set[Label]], kept: Label, removed: Label) -> None:
    """Apply the contraction ``(kept, removed)`` to a mutable adjacency map in place.

    The caller guarantees that ``kept``-``removed`` is an edge.
    """
    gone = adj.pop(removed)
    keep = adj[kept]
    keep.discard(removed)
    for w in gone:
        if w == kept:
            continue
        nw = adj[w]
        nw.discard(removed)
        nw.add(kept)
        keep.add(w)


def contract(g: LabeledGraph, c: Contraction | tuple[Label, Label]) -> LabeledGraph:
    """Return ``g/(kept, removed)``."""
    kept, removed = c
    if kept not in g:
        raise UnknownLabel(kept)
    if removed not in g:
        raise UnknownLabel(removed)
    if not g.has_edge(kept, removed):
        raise NonEdge(kept, removed)
    adj = g.adjacency()
    contract_adj(adj, kept, removed)
    return LabeledGraph.from_adjacency(adj)


def apply_sequence(g: LabeledGraph, s: Iterable) -> LabeledGraph:
    """Fold :func:`contract` over ``s``; failures report the step index."""
    adj = g.adjacency()
    for i, (kept, removed) in enumerate(s):
        if kept not in adj:
            raise UnknownLabel(kept)
        if removed not in adj:
            raise UnknownLabel(removed)
        if removed not in adj[kept]:
            raise NonEdge(kept, removed, step=i)
        contract_adj(adj, kept, removed)
    return LabeledGraph.from_adjacency(adj)


def max_degree(g: LabeledGraph) -> int:
    return max((len(ns) for ns in g._adj.values()), default=0)


def min_degree(g: LabeledGraph) -> int:
    return min((len(ns) for ns in g._adj.values()), default=0)


def degeneracy(g: LabeledGraph) -> tuple[int, list[Label]]:
    """Degeneracy and the greedy min-degree elimination order achieving it.

    Ties are broken by label order.
    """
    deg = {u: len(ns) for u, ns in g._adj.items()}
    heap = [(d, u) for u, d in deg.items()]
    heapq.heapify(heap)
    removed: set[Label] = set()
    order: list[Label] = []
    value = 0
    while heap:
        d, u = heapq.heappop(heap)
        if u in removed or d != deg[u]:
            continue
        removed.add(u)
        order.append(u)
        value = max(value, d)
        for w in g._adj[u]:
            if w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return value, order


def remaining_degree_profile(g: LabeledGraph, ordering: list[Label]) -> int:
    """Max over ``u`` of the number of neighbors of ``u`` placed after it."""
    pos = {u: i for i, u in enumerate(ordering)}
    if len(pos) != g.n or set(pos) != set(g._adj):
        raise ValueError("ordering is not a permutation of the vertices")
    return max((sum(1 for w in g._adj[u] if pos[w] > pos[u]) for u in g._adj), default=0)


def _check_subset(g: LabeledGraph, vs: Iterable[Label]) -> set[Label]:
    vs = set(vs)
    for v in vs:
        if v not in g:
            raise UnknownLabel(v)
    return vs


def components(g: LabeledGraph) -> list[frozenset[Label]]:
    """Connected components, ordered by their smallest label."""
    seen: set[Label] = set()
    out = []
    for start in sorted(g._adj):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g._adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


def induced_subgraph(g: LabeledGraph, vs: Iterable[Label]) -> LabeledGraph:
    keep = _check_subset(g, vs)
    return LabeledGraph.from_adjacency({u: g._adj[u] & keep for u in keep})


def is_connected(g: LabeledGraph, vs: Iterable[Label] | None = None) -> bool:
    """Whether ``g[vs]`` (default: all of ``g``) is connected; the empty set counts as connected."""
    part = set(g._adj) if vs is None else _check_subset(g, vs)
    if not part:
        return True
    start = next(iter(part))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g._adj[u]:
            if w in part and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(part)


def union(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    """The graph on ``V(g) | V(h)`` with edges ``E(g) | E(h)``."""
    adj: dict[Label, set[Label]] = {u: set(ns) for u, ns in g._adj.items()}
    for u, ns in h._adj.items():
        adj.setdefault(u, set()).update(ns)
    return LabeledGraph.from_adjacency(adj)


def relabel(g: LabeledGraph, mapping: dict[Label, Label]) -> LabeledGraph:
    """Rename vertices via ``mapping`` (identity for unmapped labels); must stay injective."""
    new = {u: mapping.get(u, u) for u in g._adj}
    if len(set(new.values())) != len(new):
        raise ValueError("relabeling is not injective")
    return LabeledGraph.from_adjacency({new[u]: {new[w] for w in ns} for u, ns in g._adj.items()})


def remove_vertex(g: LabeledGraph, u: Label) -> LabeledGraph:
    if u not in g:
        raise UnknownLabel(u)
    return LabeledGraph.from_adjacency({w: ns - {u} for w, ns in g._adj.items() if w != u})
