from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contrakt import formats, samples
from contrakt.bounds import min_degree_decomposition
from contrakt.errors import ParseError
from contrakt.graph import Contraction
from contrakt.reductions import BinPackingInstance, MulticoloredCliqueInstance
from contrakt.witness import sequence_to_witness
from helpers import G


def test_graph_canonical_output():
    g = G("c-a b-a", "z")
    assert formats.format_graph(g) == "v a\nv b\nv c\nv z\ne a b\ne a c\n"


def test_graph_edges_declare_endpoints_and_comments():
    g = formats.parse_graph("# a path\ne a b   # first\n\ne b c\nv d\n")
    assert g == G("a-b b-c", "d")


@pytest.mark.parametrize(
    "text, line",
    [("v a\nx a b\n", 2), ("e a\n", 1), ("v a\n\ne a a\n", 3)],
)
def test_graph_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        formats.parse_graph(text, "g.graph")
    assert info.value.line == line
    assert f"g.graph:{line}:" in str(info.value)


def test_other_parsers_report_errors():
    for kind, text in [
        ("sequence", "c a\n"),
        ("witness", "w a b\n"),
        ("mcq", "class x a\n"),
        ("mcq", "class 1 a\nclass 1 b\n"),
        ("binpacking", "4\n"),
        ("binpacking", "2 1\nfoo\n"),
        ("binpacking", "2 2\n1\n"),
        ("binpacking", ""),
        ("decomposition", "bag 0 a\nbag 0 b\n"),
        ("decomposition", "node 1\n"),
    ]:
        with pytest.raises(ParseError):
            formats._READERS[kind](text)


def test_read_missing_file(tmp_path):
    with pytest.raises(ParseError):
        formats.read("graph", tmp_path / "missing.graph")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_round_trips(tmp_path_factory, seed):
    rng = random.Random(seed)
    g = samples.random_graph(rng, samples.labels(rng.randint(1, 8)), rng.random())
    s = samples.random_sequence(rng, g, 3)
    w = sequence_to_witness(g, s)
    td = min_degree_decomposition(g)
    assert formats.parse_graph(formats.format_graph(g)) == g
    assert formats.parse_sequence(formats.format_sequence(s)) == s
    assert formats.parse_witness(formats.format_witness(w)) == w
    assert formats.parse_decomposition(formats.format_decomposition(td)) == td
    path = tmp_path_factory.mktemp("rt") / "g.graph"
    formats.write(path, formats.format_graph(g))
    assert formats.read("graph", path) == g


def test_instance_round_trips():
    mcq = MulticoloredCliqueInstance([["a", "b"], ["c"]], [("a", "c")])
    assert formats.parse_mcq(formats.format_mcq(mcq)) == mcq
    bp = BinPackingInstance((2, 4, 3, 1, 2, 3, 1), 4, 4)
    assert formats.parse_binpacking(formats.format_binpacking(bp)) == bp
    assert formats.parse_sequence("c a b\n") == (Contraction("a", "b"),)
