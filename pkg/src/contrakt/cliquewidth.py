"""Clique-width expressions and the explicit constructions for the bin-packing gadgets.

An expression is a tree of four operations: create a colored vertex,
disjoint union, join two color classes, recolor.  The number of colors an
expression uses bounds the clique-width of the graph it builds.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Union as _U

from .errors import DuplicateLabel, ParseError, SameColorEdgeOp
from .graph import Label, LabeledGraph
from .reductions import BinPackingInstance, bin_label, item_label, slot_label, unit_label


@dataclass(frozen=True)
class NewVertex:
    label: Label
    color: int


@dataclass(frozen=True)
class Union:
    left: "CwExpression"
    right: "CwExpression"


@dataclass(frozen=True)
class AddEdges:
    i: int
    j: int
    child: "CwExpression"


@dataclass(frozen=True)
class Recolor:
    src: int
    dst: int
    child: "CwExpression"


CwExpression = _U[NewVertex, Union, AddEdges, Recolor]


def _children(e: CwExpression) -> tuple:
    if isinstance(e, Union):
        return (e.left, e.right)
    if isinstance(e, (AddEdges, Recolor)):
        return (e.child,)
    return ()


def _postorder(e: CwExpression):
    stack = [(e, False)]
    while stack:
        node, done = stack.pop()
        if done:
            yield node
            continue
        stack.append((node, True))
        for c in reversed(_children(node)):
            stack.append((c, False))


def eval_cw(e: CwExpression) -> tuple[LabeledGraph, dict[Label, int]]:
    """Build the graph and final coloring of an expression, bottom-up."""
    results: list[tuple[dict[Label, int], set[tuple[Label, Label]]]] = []
    for node in _postorder(e):
        if isinstance(node, NewVertex):
            if node.color < 1:
                raise ValueError(f"colors are positive integers, got {node.color}")
            results.append(({node.label: node.color}, set()))
        elif isinstance(node, Union):
            right_col, right_e = results.pop()
            left_col, left_e = results.pop()
            clash = left_col.keys() & right_col.keys()
            if clash:
                raise DuplicateLabel(f"labels introduced twice: {sorted(clash)}")
            left_col.update(right_col)
            left_e |= right_e
            results.append((left_col, left_e))
        elif isinstance(node, AddEdges):
            if node.i == node.j:
                raise SameColorEdgeOp(f"edges({node.i},{node.j}) needs two distinct colors")
            col, edges = results[-1]
            xs = [v for v, c in col.items() if c == node.i]
            ys = [v for v, c in col.items() if c == node.j]
            edges.update((min(x, y), max(x, y)) for x in xs for y in ys)
        elif isinstance(node, Recolor):
            if node.src == node.dst:
                raise SameColorEdgeOp(f"recolor({node.src},{node.dst}) needs two distinct colors")
            col, _ = results[-1]
            for v, c in col.items():
                if c == node.src:
                    col[v] = node.dst
        else:
            raise TypeError(f"not a clique-width expression: {node!r}")
    col, edges = results.pop()
    return LabeledGraph(col, edges), col


def colors_used(e: CwExpression) -> int:
    colors: set[int] = set()
    for node in _postorder(e):
        if isinstance(node, NewVertex):
            colors.add(node.color)
        elif isinstance(node, AddEdges):
            colors |= {node.i, node.j}
        elif isinstance(node, Recolor):
            colors |= {node.src, node.dst}
    return len(colors)


def union_all(exprs: Iterable[CwExpression]) -> CwExpression:
    """Balanced disjoint union of one or more expressions."""
    items = list(exprs)
    if not items:
        raise ValueError("nothing to unite")
    while len(items) > 1:
        items = [Union(items[i], items[i + 1]) if i + 1 < len(items) else items[i] for i in range(0, len(items), 2)]
    return items[0]


def clique_expr(labels: Iterable[Label], color: int, spare: int) -> CwExpression:
    """A clique whose vertices all end with ``color``; ``spare`` is used transiently."""
    labels = list(labels)
    expr: CwExpression = NewVertex(labels[0], color)
    for v in labels[1:]:
        expr = Recolor(spare, color, AddEdges(color, spare, Union(expr, NewVertex(v, spare))))
    return expr


def build_cw_h(inst: BinPackingInstance) -> CwExpression:
    """Four-color expression for the target graph of the bin-packing gadget.

    Bins are added one at a time: the slots of the new bin form a clique
    colored 3 and the bin vertex gets color 4; after joining 3-4, 1-3 and
    2-4, colors 3 and 4 fold back into 1 (slots) and 2 (bins).
    """
    C = inst.capacity
    first = [slot_label(j) for j in range(C)]
    expr: CwExpression = AddEdges(1, 2, Union(clique_expr(first, 1, 2), NewVertex(bin_label(0), 2)))
    for i in range(1, inst.bins):
        block = [slot_label(j) for j in range(i * C, (i + 1) * C)]
        new = AddEdges(3, 4, Union(clique_expr(block, 3, 4), NewVertex(bin_label(i), 4)))
        expr = Union(expr, new)
        expr = AddEdges(2, 4, AddEdges(1, 3, expr))
        expr = Recolor(4, 2, Recolor(3, 1, expr))
    return expr


def build_cw_g(inst: BinPackingInstance) -> CwExpression:
    """Three-color expression for the source graph of the bin-packing gadget.

    Units are color 1 and items color 2 in a forest of stars; the bin clique
    arrives as color 3, is joined to the items and recolored to 2; the slot
    clique then arrives as color 3 and is joined to the units.
    """
    stars = []
    for x, a in enumerate(inst.item_sizes):
        leaves = union_all(NewVertex(unit_label(x, p), 1) for p in range(a))
        stars.append(AddEdges(1, 2, Union(NewVertex(item_label(x), 2), leaves)))
    expr = union_all(stars)
    bins = clique_expr([bin_label(i) for i in range(inst.bins)], 3, 1)
    expr = Recolor(3, 2, AddEdges(2, 3, Union(expr, bins)))
    slots = clique_expr([slot_label(j) for j in range(inst.capacity * inst.bins)], 3, 2)
    return AddEdges(1, 3, Union(expr, slots))


# -- s-expression format ----------------------------------------------------


def to_sexpr(e: CwExpression) -> str:
    parts: list[str] = []
    for node in _postorder(e):
        if isinstance(node, NewVertex):
            parts.append(f"(new {node.label} {node.color})")
        elif isinstance(node, Union):
            right = parts.pop()
            left = parts.pop()
            parts.append(f"(union {left} {right})")
        elif isinstance(node, AddEdges):
            parts.append(f"(edges {node.i} {node.j} {parts.pop()})")
        else:
            parts.append(f"(recolor {node.src} {node.dst} {parts.pop()})")
    return parts.pop()


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_sexpr(text: str) -> CwExpression:
    tokens = _TOKEN.findall(text)
    stack: list[list] = []
    done: CwExpression | None = None
    for tok in tokens:
        if done is not None:
            raise ParseError(f"trailing input after expression: {tok!r}")
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'")
            node = _build(stack.pop())
            if stack:
                stack[-1].append(node)
            else:
                done = node
        else:
            if not stack:
                raise ParseError(f"atom {tok!r} outside an expression")
            stack[-1].append(tok)
    if stack or done is None:
        raise ParseError("unterminated expression")
    return done


def _int(tok) -> int:
    try:
        return int(tok)
    except (TypeError, ValueError):
        raise ParseError(f"expected a color, got {tok!r}") from None


def _build(items: list) -> CwExpression:
    if not items or not isinstance(items[0], str):
        raise ParseError("expression must start with an operator")
    op, args = items[0], items[1:]
    if op == "new" and len(args) == 2 and isinstance(args[0], str):
        return NewVertex(args[0], _int(args[1]))
    if op == "union" and len(args) == 2 and not any(isinstance(a, str) for a in args):
        return Union(args[0], args[1])
    if op in ("edges", "recolor") and len(args) == 3 and not isinstance(args[2], str):
        cls = AddEdges if op == "edges" else Recolor
        return cls(_int(args[0]), _int(args[1]), args[2])
    raise ParseError(f"malformed ({op} ...) expression")
