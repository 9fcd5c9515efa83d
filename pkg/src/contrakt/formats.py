"""Line-oriented text formats for graphs, sequences, witnesses, instances and decompositions.

Every reader accepts ``#`` comments and blank lines and reports the
offending line number on errors.  Writers are canonical: sorted output, so
files diff cleanly.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .bounds import TreeDecomposition
from .errors import MalformedInstance, ParseError
from .graph import Contraction, ContractionSequence, LabeledGraph
from .reductions import BinPackingInstance, MulticoloredCliqueInstance
from .witness import WitnessStructure


def _lines(text: str, source: str | None) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def parse_graph(text: str, source: str | None = None) -> LabeledGraph:
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    for no, tok in _lines(text, source):
        if tok[0] == "v" and len(tok) == 2:
            vertices.append(tok[1])
        elif tok[0] == "e" and len(tok) == 3:
            if tok[1] == tok[2]:
                raise ParseError(f"self-loop on {tok[1]!r}", no, source)
            edges.append((tok[1], tok[2]))
        else:
            raise ParseError(f"expected 'v <label>' or 'e <label> <label>', got {' '.join(tok)!r}", no, source)
    return LabeledGraph(vertices, edges)


def format_graph(g: LabeledGraph) -> str:
    out = [f"v {u}" for u in sorted(g.vertices)]
    out += [f"e {u} {v}" for u, v in g.edge_list()]
    return "\n".join(out) + "\n"


def parse_sequence(text: str, source: str | None = None) -> ContractionSequence:
    steps = []
    for no, tok in _lines(text, source):
        if tok[0] != "c" or len(tok) != 3:
            raise ParseError(f"expected 'c <kept> <removed>', got {' '.join(tok)!r}", no, source)
        steps.append(Contraction(tok[1], tok[2]))
    return tuple(steps)


def format_sequence(s) -> str:
    return "".join(f"c {kept} {removed}\n" for kept, removed in s)


def parse_witness(text: str, source: str | None = None) -> WitnessStructure:
    blocks = []
    for no, tok in _lines(text, source):
        if tok[0] != "w" or len(tok) < 3 or tok[2] != ":":
            raise ParseError(f"expected 'w <rep> : <member> ...', got {' '.join(tok)!r}", no, source)
        members = set(tok[3:]) | {tok[1]}
        blocks.append((tok[1], members))
    return WitnessStructure(blocks)


def format_witness(w: WitnessStructure) -> str:
    return "".join(f"w {rep} : {' '.join(sorted(m))}\n" for rep, m in w.blocks)


def parse_mcq(text: str, source: str | None = None) -> MulticoloredCliqueInstance:
    classes: dict[int, list[str]] = {}
    edges = []
    for no, tok in _lines(text, source):
        if tok[0] == "class" and len(tok) >= 3:
            try:
                idx = int(tok[1])
            except ValueError:
                raise ParseError(f"class index must be an integer, got {tok[1]!r}", no, source) from None
            if idx in classes:
                raise ParseError(f"class {idx} declared twice", no, source)
            classes[idx] = tok[2:]
        elif tok[0] == "edge" and len(tok) == 3:
            edges.append((tok[1], tok[2]))
        else:
            raise ParseError(f"expected 'class <i> <label> ...' or 'edge <a> <b>', got {' '.join(tok)!r}", no, source)
    try:
        return MulticoloredCliqueInstance([classes[i] for i in sorted(classes)], edges)
    except MalformedInstance as exc:
        raise ParseError(str(exc), None, source) from exc


def format_mcq(inst: MulticoloredCliqueInstance) -> str:
    out = [f"class {i} {' '.join(sorted(c))}" for i, c in enumerate(inst.color_classes, 1)]
    out += [f"edge {u} {v}" for u, v in sorted(inst.edges)]
    return "\n".join(out) + "\n"


def parse_binpacking(text: str, source: str | None = None) -> BinPackingInstance:
    header = None
    sizes = []
    for no, tok in _lines(text, source):
        try:
            nums = [int(t) for t in tok]
        except ValueError:
            raise ParseError(f"expected integers, got {' '.join(tok)!r}", no, source) from None
        if header is None:
            if len(nums) != 2:
                raise ParseError("first line must be 'C k'", no, source)
            header = nums
        elif len(nums) == 1:
            sizes.append(nums[0])
        else:
            raise ParseError("expected one item size per line", no, source)
    if header is None:
        raise ParseError("empty bin-packing file", None, source)
    try:
        return BinPackingInstance(tuple(sizes), header[0], header[1])
    except MalformedInstance as exc:
        raise ParseError(str(exc), None, source) from exc


def format_binpacking(inst: BinPackingInstance) -> str:
    return f"{inst.capacity} {inst.bins}\n" + "".join(f"{a}\n" for a in inst.item_sizes)


def parse_decomposition(text: str, source: str | None = None) -> TreeDecomposition:
    bags: dict[str, list[str]] = {}
    links = []
    for no, tok in _lines(text, source):
        if tok[0] == "bag" and len(tok) >= 2:
            if tok[1] in bags:
                raise ParseError(f"bag {tok[1]} declared twice", no, source)
            bags[tok[1]] = tok[2:]
        elif tok[0] == "link" and len(tok) == 3:
            links.append((tok[1], tok[2]))
        else:
            raise ParseError(f"expected 'bag <id> <label> ...' or 'link <id> <id>', got {' '.join(tok)!r}", no, source)
    return TreeDecomposition(bags, links)


def format_decomposition(td: TreeDecomposition) -> str:
    ids = sorted(td.bags, key=str)
    out = [" ".join(["bag", str(t), *sorted(td.bags[t])]) for t in ids]
    out += [f"link {a} {b}" for a, b in sorted((tuple(sorted(map(str, e))) for e in td.links))]
    return "\n".join(out) + "\n"


_READERS = {
    "graph": parse_graph,
    "sequence": parse_sequence,
    "witness": parse_witness,
    "mcq": parse_mcq,
    "binpacking": parse_binpacking,
    "decomposition": parse_decomposition,
}


def read(kind: str, path: str | Path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, str(path)) from exc
    try:
        return _READERS[kind](text, str(path))
    except ValueError as exc:  # invalid labels from the graph constructor
        raise ParseError(str(exc), None, str(path)) from exc


def write(path: str | Path, text: str) -> None:
    Path(path).write_text(text)
