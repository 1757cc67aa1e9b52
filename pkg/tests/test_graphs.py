import pytest

from maxbond.errors import (
    DuplicateEdge,
    InvalidParameter,
    LoopEdge,
    NodeOutOfRange,
    NotThreeConnected,
)
from maxbond.graphs import (
    K33,
    K3,
    K5_MINUS_E,
    PRISM,
    Cycle,
    Wagner,
    Wheel,
    articulation_points,
    build_graph,
    classify_3connected_k5e,
    classify_family,
    connected_components,
    contract_edge,
    cycle_edges,
    enumerate_cycles,
    fixture,
    generate,
    induced_cycles,
    is_connected,
    is_k_connected,
)


def test_build_graph_rejects_bad_edges():
    with pytest.raises(LoopEdge):
        build_graph(3, [(1, 1)])
    with pytest.raises(DuplicateEdge):
        build_graph(3, [(0, 1), (1, 0)])
    with pytest.raises(NodeOutOfRange):
        build_graph(3, [(0, 3)])


def test_graph_lookup():
    g = build_graph(4, [(0, 1), (2, 1), (2, 3)])
    assert g.edges == ((0, 1), (1, 2), (2, 3))
    assert g.edge_id(2, 1) == 1
    assert g.has_edge(1, 0) and not g.has_edge(0, 3)
    assert g.degree(2) == 2
    assert sorted(g.incident_edges(1)) == [0, 1]


def test_family_sizes():
    assert generate(Cycle(5)).edge_count == 5
    w = generate(Wheel(6))
    assert (w.node_count, w.edge_count) == (7, 12)
    v8 = generate(Wagner(8))
    assert (v8.node_count, v8.edge_count) == (8, 12)
    assert generate(PRISM).edge_count == 9
    assert generate(K33).edge_count == 9
    assert generate(K5_MINUS_E).edge_count == 9
    assert generate(K3).edge_count == 3


def test_wheel_layout():
    # rim edges first, spokes after, center is the last node
    w = generate(Wheel(4))
    assert w.edges[:4] == ((0, 1), (1, 2), (2, 3), (0, 3))
    assert all(4 in e for e in w.edges[4:])


def test_classification_round_trip():
    cases = [Cycle(7), Wheel(5), Wagner(8), PRISM, K3, K33, K5_MINUS_E]
    for tag in cases:
        got, _ = classify_family(generate(tag))
        assert got == tag, tag


def test_wagner_six_is_k33():
    got, _ = classify_family(generate(Wagner(6)))
    assert got == K33


def test_classify_requires_three_connected():
    with pytest.raises(NotThreeConnected):
        classify_3connected_k5e(generate(Cycle(5)))
    tag, _ = classify_3connected_k5e(generate(Cycle(5)), check=False)
    assert tag.kind == "other"


def test_connectivity_predicates():
    path = build_graph(4, [(0, 1), (1, 2), (2, 3)])
    assert is_connected(path)
    assert is_k_connected(path, 1)
    assert not is_k_connected(path, 2)
    assert articulation_points(path) == {1, 2}
    assert is_k_connected(generate(Wheel(5)), 3)

    two = build_graph(5, [(0, 1), (2, 3), (3, 4), (2, 4)])
    assert connected_components(two) == [[0, 1], [2, 3, 4]]


def test_contract_edge_wheel_rim():
    w = generate(Wheel(4))
    contracted, node_map, edge_map = contract_edge(w, 0)
    tag, _ = classify_family(contracted)
    assert tag == Wheel(3)
    assert node_map[0] == node_map[1]
    assert edge_map[0] is None
    # parallel spokes merged into a single image
    assert edge_map[4] == edge_map[5]


def test_cycle_enumeration_counts():
    k4 = build_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert len(enumerate_cycles(k4)) == 7
    assert len(induced_cycles(k4)) == 4
    w5 = generate(Wheel(5))
    ind = induced_cycles(w5)
    assert len(ind) == 6  # five triangles and the rim
    assert tuple(range(5)) in ind


def test_cycle_edges_validates():
    g = generate(Cycle(4))
    assert cycle_edges(g, (0, 1, 2, 3)) == [0, 1, 2, 3]
    with pytest.raises(InvalidParameter):
        cycle_edges(g, (0, 1, 3, 2))


def test_fixtures():
    f2 = fixture("fig2g")
    assert (f2.node_count, f2.edge_count) == (10, 17)
    f2e = fixture("fig2g+e")
    assert f2e.edge_count == 18 and f2e.has_edge(7, 8)
    assert all(f2.has_edge(i, (i + 1) % 6) for i in range(6))
    f3 = fixture("fig3")
    assert (f3.node_count, f3.edge_count) == (8, 10)
    with pytest.raises(InvalidParameter):
        fixture("nope")
