"""Structural bounds under contraction, as checkable constructions.

Covers tree decompositions (validation, a min-degree heuristic, and the two
lifts to the union graph G u H), degeneracy and max-degree growth, and the
family on which the max-degree bound is tight.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Hashable, Iterable

from .errors import BadParams, InvalidInputs, NotAPartition, NotATree
from .graph import (
    Contraction,
    ContractionSequence,
    Label,
    LabeledGraph,
    apply_sequence,
    degeneracy,
    max_degree,
    union,
)
from .witness import WitnessStructure, quotient, validate_witness

BagId = Hashable


@dataclass(frozen=True)
class TreeDecomposition:
    bags: dict[BagId, frozenset[Label]]
    links: tuple[tuple[BagId, BagId], ...]

    def __init__(self, bags: dict[BagId, Iterable[Label]], links: Iterable[tuple[BagId, BagId]] = ()):
        object.__setattr__(self, "bags", {t: frozenset(b) for t, b in bags.items()})
        object.__setattr__(self, "links", tuple(tuple(e) for e in links))

    def __hash__(self) -> int:
        return hash((frozenset(self.bags.items()), frozenset(frozenset(e) for e in self.links)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreeDecomposition):
            return NotImplemented
        return self.bags == other.bags and {frozenset(e) for e in self.links} == {
            frozenset(e) for e in other.links
        }

    def neighbors(self) -> dict[BagId, set[BagId]]:
        adj: dict[BagId, set[BagId]] = {t: set() for t in self.bags}
        for a, b in self.links:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def check_tree(td: TreeDecomposition) -> None:
    """Raise :class:`NotATree` unless the links form a tree on the bag ids."""
    if not td.bags:
        raise NotATree("a decomposition needs at least one bag")
    for a, b in td.links:
        if a not in td.bags or b not in td.bags:
            raise NotATree(f"link {a}-{b} refers to an unknown bag")
        if a == b:
            raise NotATree(f"self-link on bag {a}")
    if len({frozenset(e) for e in td.links}) != len(td.links) or len(td.links) != len(td.bags) - 1:
        raise NotATree("tree must have exactly one link fewer than bags")
    adj = td.neighbors()
    start = next(iter(td.bags))
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    if len(seen) != len(td.bags):
        raise NotATree("links do not connect all bags")


def validate_td(g: LabeledGraph, td: TreeDecomposition) -> bool:
    """Coverage of vertices, connectivity of each vertex's bags, coverage of edges."""
    check_tree(td)
    holders: dict[Label, set[BagId]] = defaultdict(set)
    for t, bag in td.bags.items():
        for x in bag:
            if x not in g:
                return False
            holders[x].add(t)
    if set(holders) != g.vertices:
        return False
    adj = td.neighbors()
    for x, ts in holders.items():
        start = next(iter(ts))
        seen = {start}
        stack = [start]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt in ts and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(ts):
            return False
    return all(holders[u] & holders[v] for u, v in g.edges)


def width(td: TreeDecomposition) -> int:
    return max(len(b) for b in td.bags.values()) - 1


def min_degree_decomposition(g: LabeledGraph) -> TreeDecomposition:
    """Tree decomposition from the min-degree elimination game (ties by label).

    Not optimal in general; every bag is a vertex plus its neighbors at
    elimination time.
    """
    if g.n == 0:
        return TreeDecomposition({"0": ()})
    adj = g.adjacency()
    order: list[Label] = []
    bags: dict[Label, frozenset[Label]] = {}
    while adj:
        v = min(adj, key=lambda x: (len(adj[x]), x))
        ns = adj.pop(v)
        bags[v] = frozenset(ns | {v})
        order.append(v)
        for a in ns:
            adj[a].discard(v)
            adj[a] |= ns - {a}
    pos = {v: i for i, v in enumerate(order)}
    links = []
    roots = []
    for v in order:
        later = bags[v] - {v}
        if later:
            links.append((v, min(later, key=pos.__getitem__)))
        else:
            roots.append(v)
    # Joining the per-component roots keeps the decomposition valid.
    links += [(roots[i], roots[i + 1]) for i in range(len(roots) - 1)]
    return TreeDecomposition(bags, links)


def lift_td_contraction(
    td_g: TreeDecomposition,
    w: WitnessStructure,
    g: LabeledGraph | None = None,
    h: LabeledGraph | None = None,
) -> TreeDecomposition:
    """Add to each bag the representative of every member's block.

    The result decomposes ``g | h`` and each bag at most doubles in size.
    When ``g`` (and optionally ``h``) are given, the inputs are checked first.
    """
    if g is not None:
        try:
            target = h if h is not None else quotient(g, w)
            ok = validate_td(g, td_g) and validate_witness(g, target, w)
        except (NotATree, NotAPartition) as exc:
            raise InvalidInputs(str(exc)) from exc
        if not ok:
            raise InvalidInputs("decomposition or witness is not valid for g")
    owner = w.owner()
    try:
        bags = {t: bag | {owner[x] for x in bag} for t, bag in td_g.bags.items()}
    except KeyError as exc:
        raise InvalidInputs(f"bag vertex {exc.args[0]!r} is not covered by the witness") from None
    return TreeDecomposition(bags, td_g.links)


def lift_td_mcc(td_m: TreeDecomposition, g: LabeledGraph, h: LabeledGraph, m: LabeledGraph) -> TreeDecomposition:
    """Add every vertex of ``g | h`` missing from ``m`` to every bag."""
    if not m.vertices <= g.vertices & h.vertices:
        raise InvalidInputs("V(m) must lie in both V(g) and V(h)")
    try:
        if not validate_td(m, td_m):
            raise InvalidInputs("decomposition is not valid for m")
    except NotATree as exc:
        raise InvalidInputs(str(exc)) from exc
    deleted = (g.vertices | h.vertices) - m.vertices
    return TreeDecomposition({t: bag | deleted for t, bag in td_m.bags.items()}, td_m.links)


@dataclass
class GrowthReport:
    before: int
    after: int
    steps: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.after <= self.bound


def check_degeneracy_growth(g: LabeledGraph, s: Iterable) -> GrowthReport:
    """Degeneracy before and after ``s``; the bound is ``before + |s|``."""
    s = tuple(s)
    after = apply_sequence(g, s)
    before_val = degeneracy(g)[0]
    return GrowthReport(before_val, degeneracy(after)[0], len(s), before_val + len(s))


def check_maxdeg_growth(g: LabeledGraph, s: Iterable) -> GrowthReport:
    """Max degree before and after ``s``; the bound is ``D + |s|(D - 2)`` for ``D >= 2``."""
    s = tuple(s)
    d = max_degree(g)
    if d < 2:
        raise BadParams("the max-degree bound needs max degree at least 2")
    after = apply_sequence(g, s)
    return GrowthReport(d, max_degree(after), len(s), d + len(s) * (d - 2))


def build_maxdeg_tight_family(delta: int, t: int) -> tuple[LabeledGraph, ContractionSequence]:
    """A max-degree-``delta`` graph and ``t`` contractions reaching degree ``delta + t(delta - 2)``.

    A path ``p_0..p_t`` where each spine vertex carries ``delta - 2`` leaves,
    plus one extra leaf at each end; contracting the spine into ``p_0``
    leaves a star.
    """
    if delta < 2 or t < 0:
        raise BadParams("need delta >= 2 and t >= 0")
    spine = [f"p_{i}" for i in range(t + 1)]
    edges = list(zip(spine, spine[1:]))
    edges += [(p, f"leaf_{i}_{j}") for i, p in enumerate(spine) for j in range(delta - 2)]
    edges += [(spine[0], "end_0"), (spine[-1], "end_1")]
    g = LabeledGraph(spine, edges)
    return g, tuple(Contraction(spine[0], p) for p in spine[1:])


def union_graph(g: LabeledGraph, h: LabeledGraph) -> LabeledGraph:
    return union(g, h)
