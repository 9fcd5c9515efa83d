"""Gadget generators for the hardness constructions, plus brute-force oracles
for their source problems (Multicolored Clique, Unary Perfect Bin Packing).

Generated labels follow a fixed scheme so gadgets stay auditable:
``t_<i>``, ``b_<i>``, ``d_<j>``, ``alpha_<x>_<p>``, ``z_<u>_<v>`` and so on.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable

from .errors import ImperfectTotal, MalformedInstance, NotSubset, TooLarge
from .graph import Contraction, ContractionSequence, Label, LabeledGraph

ORACLE_LIMIT = 10**6


@dataclass(frozen=True)
class MulticoloredCliqueInstance:
    color_classes: tuple[frozenset[Label], ...]
    edges: frozenset[tuple[Label, Label]]

    def __init__(self, color_classes: Iterable[Iterable[Label]], edges: Iterable[tuple[Label, Label]] = ()):
        classes = tuple(frozenset(c) for c in color_classes)
        seen: set[Label] = set()
        for i, c in enumerate(classes, 1):
            if not c:
                raise MalformedInstance(f"color class {i} is empty")
            if seen & c:
                raise MalformedInstance(f"color class {i} overlaps an earlier class")
            seen |= c
        norm = set()
        for u, v in edges:
            if u == v:
                raise MalformedInstance(f"self-loop on {u!r}")
            if u not in seen or v not in seen:
                raise MalformedInstance(f"edge {u}-{v} leaves the instance")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "color_classes", classes)
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def k(self) -> int:
        return len(self.color_classes)

    @property
    def vertices(self) -> frozenset[Label]:
        return frozenset().union(*self.color_classes)

    def graph(self) -> LabeledGraph:
        return LabeledGraph(self.vertices, self.edges)

    def class_of(self) -> dict[Label, int]:
        """Map each vertex to its 1-based class index."""
        return {v: i for i, c in enumerate(self.color_classes, 1) for v in c}


@dataclass(frozen=True)
class BinPackingInstance:
    item_sizes: tuple[int, ...]
    capacity: int
    bins: int

    def __post_init__(self):
        object.__setattr__(self, "item_sizes", tuple(self.item_sizes))
        if self.capacity < 1 or self.bins < 1:
            raise MalformedInstance("capacity and bin count must be positive")
        if any(a < 1 for a in self.item_sizes):
            raise MalformedInstance("item sizes must be positive")
        if sum(self.item_sizes) != self.capacity * self.bins:
            raise ImperfectTotal(
                f"sizes sum to {sum(self.item_sizes)}, expected C*k = {self.capacity * self.bins}"
            )

    @property
    def n(self) -> int:
        return len(self.item_sizes)


@dataclass
class GadgetInstance:
    g: LabeledGraph
    h: LabeledGraph
    k: int
    reduction: str
    source: object = field(repr=False, default=None)


def _guard_labels(original: Iterable[Label], generated: Iterable[Label]) -> None:
    clash = set(original) & set(generated)
    if clash:
        raise MalformedInstance(f"instance labels collide with gadget labels: {sorted(clash)}")


def _clique(vs: Iterable[Label]) -> list[tuple[Label, Label]]:
    return list(itertools.combinations(sorted(vs), 2))


def _biclique(xs: Iterable[Label], ys: Iterable[Label]) -> list[tuple[Label, Label]]:
    return [(x, y) for x in xs for y in ys]


# -- Multicolored Clique -> Labeled Contractibility ---------------------------


def pad_label(i: int) -> Label:
    return f"pad_{i}"


def pad_instance(inst: MulticoloredCliqueInstance) -> MulticoloredCliqueInstance:
    """Add one isolated vertex per class, so every vertex has a non-neighbor in every other class."""
    pads = [pad_label(i) for i in range(1, inst.k + 1)]
    _guard_labels(inst.vertices, pads)
    return MulticoloredCliqueInstance([c | {p} for c, p in zip(inst.color_classes, pads)], inst.edges)


def mcq_to_contractibility(inst: MulticoloredCliqueInstance) -> GadgetInstance:
    """H completes every class to a clique; G adds a clique ``t_1..t_k`` with ``t_i`` joined to class ``i``."""
    padded = pad_instance(inst)
    terminals = [f"t_{i}" for i in range(1, padded.k + 1)]
    _guard_labels(padded.vertices, terminals)
    h_edges = set(padded.edges)
    for c in padded.color_classes:
        h_edges.update(_clique(c))
    h = LabeledGraph(padded.vertices, h_edges)
    g_edges = set(h_edges) | set(_clique(terminals))
    for t, c in zip(terminals, padded.color_classes):
        g_edges.update(_biclique([t], c))
    g = LabeledGraph(padded.vertices | set(terminals), g_edges)
    return GadgetInstance(g, h, padded.k, "mcq2contr", inst)


def mcq_certificate(clique: Iterable[Label]) -> ContractionSequence:
    """Contract each ``t_i`` into the clique's vertex from class ``i``."""
    return tuple(Contraction(u, f"t_{i}") for i, u in enumerate(clique, 1))


# -- Unary Perfect Bin Packing -> Labeled Contractibility ---------------------


def bin_label(i: int) -> Label:
    return f"b_{i}"


def slot_label(j: int) -> Label:
    return f"d_{j}"


def item_label(x: int) -> Label:
    return f"t_{x}"


def unit_label(x: int, p: int) -> Label:
    return f"alpha_{x}_{p}"


def binpacking_to_contractibility(inst: BinPackingInstance) -> GadgetInstance:
    """Bins ``b_i`` and slots ``d_j`` form cliques in both graphs.

    H joins ``b_i`` to the ``C`` slots ``d_{iC}..d_{(i+1)C-1}``; G instead has
    items ``t_x`` joined to every bin, each carrying ``a_x`` pendant units
    ``alpha_x_p`` that are joined to every slot.
    """
    C, k = inst.capacity, inst.bins
    B = [bin_label(i) for i in range(k)]
    D = [slot_label(j) for j in range(C * k)]
    T = [item_label(x) for x in range(inst.n)]
    A = [unit_label(x, p) for x, a in enumerate(inst.item_sizes) for p in range(a)]
    shared = _clique(B) + _clique(D)
    h = LabeledGraph(B + D, shared + [(bin_label(j // C), slot_label(j)) for j in range(C * k)])
    g_edges = shared + _biclique(T, B) + _biclique(A, D)
    g_edges += [(item_label(x), unit_label(x, p)) for x, a in enumerate(inst.item_sizes) for p in range(a)]
    g = LabeledGraph(B + D + T + A, g_edges)
    return GadgetInstance(g, h, g.n - h.n, "bp2contr", inst)


def binpacking_certificate(inst: BinPackingInstance, phi: Iterable[int]) -> ContractionSequence:
    """Contractions turning G into H for a perfect assignment ``phi``.

    Each item is contracted into its bin; the ``C`` units a bin collects are
    then absorbed by that bin's slots in order.
    """
    phi = list(phi)
    C = inst.capacity
    steps = [Contraction(bin_label(phi[x]), item_label(x)) for x in range(inst.n)]
    for i in range(inst.bins):
        units = [unit_label(x, p) for x in range(inst.n) if phi[x] == i for p in range(inst.item_sizes[x])]
        steps += [Contraction(slot_label(C * i + y), u) for y, u in enumerate(units)]
    return tuple(steps)


# -- Multicolored Clique -> MCC on 4-degenerate graphs ------------------------


def mcc_budget(k: int) -> int:
    return 2 * (k + math.comb(k, 2))


def mcq_to_mcc_degen4(inst: MulticoloredCliqueInstance, extra_count: int | None = None) -> GadgetInstance:
    """Both graphs share one vertex set; H adds ``a_i b_i``, ``c_ij d_ij``, ``c_ij a_i`` and ``c_ij a_j``.

    Each class ``V_i`` and each edge-subdivision set ``Z_ij`` is padded with
    ``extra_count`` extra vertices (default ``4k^3``).  Equivalence with the
    source instance is only guaranteed when ``extra_count > 2K``.
    """
    k = inst.k
    if k < 2:
        raise MalformedInstance("need at least two color classes")
    budget = mcc_budget(k)
    if extra_count is None:
        extra_count = 4 * k**3
    if extra_count <= 2 * budget:
        warnings.warn(
            f"extra_count={extra_count} does not exceed 2K={2 * budget}; equivalence is not guaranteed",
            stacklevel=2,
        )
    cls = inst.class_of()
    pairs = list(itertools.combinations(range(1, k + 1), 2))
    Vp = {i: sorted(c) + [f"Vx_{i}_{p}" for p in range(extra_count)] for i, c in enumerate(inst.color_classes, 1)}
    Zp: dict[tuple[int, int], list[Label]] = {pair: [] for pair in pairs}
    e3 = []
    for u, v in sorted(inst.edges):
        i, j = sorted((cls[u], cls[v]))
        if i == j:
            continue
        z = f"z_{u}_{v}"
        Zp[i, j].append(z)
        e3 += [(u, z), (v, z)]
    for i, j in pairs:
        Zp[i, j] += [f"Zx_{i}_{j}_{p}" for p in range(extra_count)]
    a = {i: f"a_{i}" for i in range(1, k + 1)}
    b = {i: f"b_{i}" for i in range(1, k + 1)}
    c = {pair: f"c_{pair[0]}_{pair[1]}" for pair in pairs}
    d = {pair: f"d_{pair[0]}_{pair[1]}" for pair in pairs}
    generated = [x for vs in Vp.values() for x in vs if x not in cls]
    generated += [x for zs in Zp.values() for x in zs] + list(a.values()) + list(b.values())
    generated += list(c.values()) + list(d.values())
    _guard_labels(inst.vertices, generated)
    if len(set(generated)) != len(generated):
        raise MalformedInstance("generated labels are not unique")

    vertices = [x for vs in Vp.values() for x in vs] + generated
    e1 = [(hub[i], u) for i in Vp for hub in (a, b) for u in Vp[i]]
    e2 = [(hub[pair], z) for pair in pairs for hub in (c, d) for z in Zp[pair]]
    g = LabeledGraph(vertices, e1 + e2 + e3)
    extra = [(a[i], b[i]) for i in a]
    for i, j in pairs:
        extra += [(c[i, j], d[i, j]), (c[i, j], a[i]), (c[i, j], a[j])]
    h = LabeledGraph(vertices, e1 + e2 + e3 + extra)
    return GadgetInstance(g, h, budget, "mcq2mcc", inst)


def mcc_degen4_certificate(inst: MulticoloredCliqueInstance, clique: list[Label]) -> ContractionSequence:
    """Contractions applied identically to G and H for a multicolored clique (in class order)."""
    steps = [Contraction(f"a_{i}", u) for i, u in enumerate(clique, 1)]
    for i, j in itertools.combinations(range(1, inst.k + 1), 2):
        u, v = sorted((clique[i - 1], clique[j - 1]))
        steps.append(Contraction(f"c_{i}_{j}", f"z_{u}_{v}"))
    return tuple(steps)


# -- source-problem oracles ----------------------------------------------------


def solve_mcq_bruteforce(inst: MulticoloredCliqueInstance) -> tuple[Label, ...] | None:
    """One vertex per class, pairwise adjacent, in class order; None if none exists."""
    if math.prod(len(c) for c in inst.color_classes) > ORACLE_LIMIT:
        raise TooLarge("too many candidate cliques for exhaustive search")
    edges = inst.edges
    for pick in itertools.product(*(sorted(c) for c in inst.color_classes)):
        if all((min(u, v), max(u, v)) in edges for u, v in itertools.combinations(pick, 2)):
            return pick
    return None


def solve_binpacking_bruteforce(inst: BinPackingInstance) -> tuple[int, ...] | None:
    """An assignment ``phi`` of items to bins filling every bin exactly, or None."""
    if inst.bins**inst.n > ORACLE_LIMIT:
        raise TooLarge("too many assignments for exhaustive search")
    for phi in itertools.product(range(inst.bins), repeat=inst.n):
        load = [0] * inst.bins
        for x, i in enumerate(phi):
            load[i] += inst.item_sizes[x]
        if all(v == inst.capacity for v in load):
            return phi
    return None


def contractibility_as_mcc(g: LabeledGraph, h: LabeledGraph) -> tuple[LabeledGraph, LabeledGraph, int]:
    """Contractibility of ``h`` from ``g`` as an MCC instance with budget ``|V(g) \\ V(h)|``."""
    if not h.vertices <= g.vertices:
        raise NotSubset("V(h) is not a subset of V(g)")
    return g, h, len(g.vertices - h.vertices)
