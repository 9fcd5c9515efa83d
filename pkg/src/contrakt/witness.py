"""Witness structures: partitions of V(G) certifying that H is a contraction of G."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import CrossesBlocks, InvalidWitness, NotAMatching, NotAPartition, NonEdge, RemovesRepresentative, TooLarge
from .graph import (
    Contraction,
    ContractionSequence,
    Label,
    LabeledGraph,
    contract_adj,
    is_connected,
)

BRUTEFORCE_MAX_VERTICES = 8


@dataclass(frozen=True)
class WitnessStructure:
    """Blocks ``(representative, members)``, kept sorted by representative."""

    blocks: tuple[tuple[Label, frozenset[Label]], ...]

    def __init__(self, blocks: Iterable[tuple[Label, Iterable[Label]]]):
        norm = tuple(sorted((rep, frozenset(members)) for rep, members in blocks))
        object.__setattr__(self, "blocks", norm)

    @classmethod
    def singletons(cls, g: LabeledGraph) -> "WitnessStructure":
        return cls((u, {u}) for u in g.vertices)

    @property
    def representatives(self) -> list[Label]:
        return [rep for rep, _ in self.blocks]

    def owner(self) -> dict[Label, Label]:
        """Map each member to the representative of its block."""
        return {x: rep for rep, members in self.blocks for x in members}

    def block(self, rep: Label) -> frozenset[Label]:
        for r, members in self.blocks:
            if r == rep:
                return members
        raise KeyError(rep)

    def size(self) -> int:
        """Number of contractions the structure encodes."""
        return sum(len(m) - 1 for _, m in self.blocks)


def _check_partition(g: LabeledGraph, w: WitnessStructure, h: LabeledGraph | None) -> dict[Label, Label]:
    owner: dict[Label, Label] = {}
    reps = set()
    for rep, members in w.blocks:
        if not members:
            raise NotAPartition(f"block of {rep!r} is empty")
        if rep not in members:
            raise NotAPartition(f"representative {rep!r} is not in its own block")
        if rep in reps:
            raise NotAPartition(f"representative {rep!r} used twice")
        reps.add(rep)
        for x in members:
            if x not in g:
                raise NotAPartition(f"{x!r} is not a vertex of G")
            if x in owner:
                raise NotAPartition(f"{x!r} appears in two blocks")
            owner[x] = rep
    if len(owner) != g.n:
        missing = sorted(g.vertices - owner.keys())
        raise NotAPartition(f"blocks do not cover {missing}")
    if h is not None:
        if not h.vertices <= g.vertices:
            raise NotAPartition("V(H) is not a subset of V(G)")
        if reps != h.vertices:
            raise NotAPartition("representatives differ from V(H)")
    return owner


def quotient(g: LabeledGraph, w: WitnessStructure) -> LabeledGraph:
    """The graph on the representatives with block adjacency as edges."""
    owner = _check_partition(g, w, None)
    adj: dict[Label, set[Label]] = {rep: set() for rep in w.representatives}
    for x, y in g.edges:
        a, b = owner[x], owner[y]
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return LabeledGraph.from_adjacency(adj)


def validate_witness(g: LabeledGraph, h: LabeledGraph, w: WitnessStructure) -> bool:
    """True iff ``w`` is a witness structure of ``g`` into ``h``.

    Malformed partitions raise :class:`NotAPartition`; a well-formed partition
    that fails connectivity or adjacency returns False.
    """
    _check_partition(g, w, h)
    for _, members in w.blocks:
        if not is_connected(g, members):
            return False
    return quotient(g, w) == h


def _block_steps(g: LabeledGraph, rep: Label, members: frozenset[Label]) -> list[Contraction]:
    # BFS tree rooted at the representative, contracted leaves first.
    parent = {rep: None}
    order = [rep]
    queue = deque([rep])
    while queue:
        u = queue.popleft()
        for x in sorted(g.neighbors(u) & members):
            if x not in parent:
                parent[x] = u
                order.append(x)
                queue.append(x)
    if len(order) != len(members):
        raise InvalidWitness(f"block of {rep!r} is not connected")
    return [Contraction(parent[x], x) for x in reversed(order[1:])]


def witness_to_sequence(g: LabeledGraph, w: WitnessStructure, h: LabeledGraph | None = None) -> ContractionSequence:
    """A contraction sequence realizing ``w``; blocks in representative order.

    When ``h`` is given the witness must be valid for it, otherwise only the
    blocks' partition and connectivity are checked (the target is implied).
    """
    try:
        if h is not None:
            ok = validate_witness(g, h, w)
        else:
            _check_partition(g, w, None)
            ok = all(is_connected(g, m) for _, m in w.blocks)
    except NotAPartition as exc:
        raise InvalidWitness(str(exc)) from exc
    if not ok:
        raise InvalidWitness("witness conditions do not hold")
    steps: list[Contraction] = []
    for rep, members in w.blocks:
        steps.extend(_block_steps(g, rep, members))
    return tuple(steps)


def sequence_to_witness(g: LabeledGraph, s: Iterable) -> WitnessStructure:
    """Track which original vertices each survivor absorbed along ``s``."""
    adj = g.adjacency()
    members = {u: {u} for u in adj}
    for i, (kept, removed) in enumerate(s):
        if kept not in adj or removed not in adj or removed not in adj[kept]:
            raise NonEdge(kept, removed, step=i)
        contract_adj(adj, kept, removed)
        members[kept] |= members.pop(removed)
    return WitnessStructure(members.items())


def _distances(g: LabeledGraph, rep: Label, members: frozenset[Label]) -> dict[Label, int]:
    dist = {rep: 0}
    queue = deque([rep])
    while queue:
        u = queue.popleft()
        for x in g.neighbors(u) & members:
            if x not in dist:
                dist[x] = dist[u] + 1
                queue.append(x)
    return dist


def contract_matching_first(
    g: LabeledGraph,
    w: WitnessStructure,
    r: Iterable[tuple[Label, Label]],
    oriented: bool = False,
) -> LabeledGraph:
    """Contract every edge of the in-block matching ``r``.

    Unoriented edges keep the endpoint closer to the block representative
    (ties by label).  With ``oriented=True`` each pair is ``(kept, removed)``
    and removing a representative raises :class:`RemovesRepresentative`.
    """
    owner = _check_partition(g, w, None)
    reps = set(w.representatives)
    # Sorted so that errors do not depend on set iteration order.
    r = sorted(tuple(e) for e in r)
    used: set[Label] = set()
    for x, y in r:
        if not g.has_edge(x, y):
            raise NonEdge(x, y)
        if x in used or y in used:
            raise NotAMatching(f"edge {x}-{y} shares an endpoint with another edge")
        used |= {x, y}
    steps = []
    for x, y in r:
        if owner[x] != owner[y]:
            raise CrossesBlocks(f"edge {x}-{y} joins two blocks")
        if oriented:
            if y in reps:
                raise RemovesRepresentative(f"contraction ({x},{y}) removes representative {y!r}")
            steps.append((x, y))
            continue
        if x in reps:
            steps.append((x, y))
        elif y in reps:
            steps.append((y, x))
        else:
            rep = owner[x]
            dist = _distances(g, rep, w.block(rep))
            steps.append((x, y) if (dist[x], x) <= (dist[y], y) else (y, x))
    adj = g.adjacency()
    for kept, removed in steps:
        contract_adj(adj, kept, removed)
    return LabeledGraph.from_adjacency(adj)


def find_witness_bruteforce(g: LabeledGraph, h: LabeledGraph) -> WitnessStructure | None:
    """Exhaustively search all assignments of V(G)\\V(H) to representatives."""
    if g.n > BRUTEFORCE_MAX_VERTICES:
        raise TooLarge(f"brute-force witness search is limited to {BRUTEFORCE_MAX_VERTICES} vertices")
    if not h.vertices <= g.vertices:
        return None
    reps = sorted(h.vertices)
    rest = sorted(g.vertices - h.vertices)
    if not reps:
        return WitnessStructure(()) if g.n == 0 else None
    for choice in itertools.product(reps, repeat=len(rest)):
        blocks = {rep: {rep} for rep in reps}
        for x, rep in zip(rest, choice):
            blocks[rep].add(x)
        w = WitnessStructure(blocks.items())
        if validate_witness(g, h, w):
            return w
    return None
