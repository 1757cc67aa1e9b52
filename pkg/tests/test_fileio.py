import pytest

from maxbond.errors import InvalidParameter
from maxbond.fileio import (
    format_graph,
    format_inequality,
    parse_graph,
    parse_inequality,
)
from maxbond.graphs import Cycle, generate
from maxbond.polytope import LinearInequality, cycle_sum


def test_parse_graph_with_comments_and_weights():
    text = """# a square
    4 4
    0 1 3   # first edge
    1 2 1
    2 3 2
    0 3 5
    """
    g, w = parse_graph(text)
    assert g.node_count == 4 and g.edge_count == 4
    assert w == [3, 1, 2, 5]


def test_unweighted_defaults_to_one():
    g, w = parse_graph("2 1\n0 1\n")
    assert w == [1]


def test_graph_round_trip():
    g = generate(Cycle(5))
    w = [2, -3, 0, 7, 1]
    g2, w2 = parse_graph(format_graph(g, w))
    assert g2.edges == g.edges and w2 == w
    g3, w3 = parse_graph(format_graph(g))
    assert g3.edges == g.edges and w3 == [1] * 5


@pytest.mark.parametrize("text", [
    "",
    "3\n",
    "3 2\n0 1\n",               # missing an edge line
    "3 1\n0 1 2 3\n",           # too many fields
])
def test_parse_graph_rejects_malformed(text):
    with pytest.raises(InvalidParameter):
        parse_graph(text)


def test_inequality_round_trip():
    g = generate(Cycle(4))
    ineq = cycle_sum(g, (0, 1, 2, 3))
    text = format_inequality(ineq, g)
    assert parse_inequality(text, g).same_as(ineq)


def test_inequality_rationals_normalize():
    g = generate(Cycle(3))
    text = '{"coeffs": {"0-1": "1/2", "1-2": "1/2", "0-2": "1/2"}, "rhs": 1}'
    ineq = parse_inequality(text, g)
    assert ineq.same_as(LinearInequality.make([1, 1, 1], 2))


def test_inequality_rejects_unknown_edge():
    g = generate(Cycle(3))
    with pytest.raises(InvalidParameter):
        parse_inequality('{"coeffs": {"0-9": 1}, "rhs": 1}', g)
    with pytest.raises(InvalidParameter):
        parse_inequality("not json", g)
