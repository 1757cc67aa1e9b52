import pytest

from maxbond.errors import HypothesisViolated, InvalidParameter, NotAFacet
from maxbond.graphs import Cycle, Wheel, classify_family, generate
from maxbond.polytope import (
    LinearInequality,
    contract_path_to_edge,
    cycle_homog,
    cycle_sum,
    edge_nonneg,
    lift_node_split,
    lift_subdivide,
    lift_triangle,
)


def test_subdivide_cycle_sum_round_trip():
    g = generate(Cycle(5))
    res = lift_subdivide(g, cycle_sum(g, tuple(range(5))), 0, k=2)
    assert res.verified
    tag, _ = classify_family(res.graph)
    assert tag == Cycle(6)
    assert res.inequality.coeffs == (1,) * 6 and res.inequality.rhs == 2


def test_subdivide_hypotheses():
    g = generate(Cycle(4))
    cyc = tuple(range(4))
    with pytest.raises(HypothesisViolated):
        # the distinguished edge has coefficient 1 > rhs/2 = 0
        lift_subdivide(g, cycle_homog(g, cyc, 0), 0)
    with pytest.raises(HypothesisViolated):
        lift_subdivide(g, edge_nonneg(g, 1), 1)
    # a different edge of the homogeneous facet is fine
    res = lift_subdivide(g, cycle_homog(g, cyc, 0), 2, k=3)
    assert res.verified


def test_node_split_requires_nonempty_groups():
    g = generate(Cycle(4))
    ineq = cycle_sum(g, tuple(range(4)))
    inc = list(g.incident_edges(0))
    with pytest.raises(InvalidParameter):
        lift_node_split(g, ineq, 0, (inc, []))
    res = lift_node_split(g, ineq, 0, (inc[:1], inc[1:]))
    assert res.verified
    assert res.graph.node_count == 5
    tag, _ = classify_family(res.graph)
    assert tag == Cycle(5)


def test_node_split_rejects_non_facet_input():
    g = generate(Cycle(4))
    weak = LinearInequality.make([1, 1, 1, 1], 5)  # valid but never tight
    inc = list(g.incident_edges(0))
    with pytest.raises(NotAFacet):
        lift_node_split(g, weak, 0, (inc[:1], inc[1:]))


def test_triangle_on_wheel_center():
    g = generate(Wheel(3))
    facet = cycle_sum(g, (0, 1, 2))
    inc = list(g.incident_edges(3))
    res = lift_triangle(g, facet, 3, (inc[:1], inc[1:2], inc[2:]))
    assert res.verified
    # the center is replaced by a triangle: one node out, three in
    assert res.graph.node_count == 6
    assert res.graph.edge_count == g.edge_count + 3


def test_triangle_allows_empty_group():
    g = generate(Cycle(4))
    ineq = cycle_sum(g, tuple(range(4)))
    inc = list(g.incident_edges(1))
    res = lift_triangle(g, ineq, 1, (inc[:1], inc[1:], []))
    assert res.verified


def test_contract_path_round_trip():
    g = generate(Cycle(6))
    cyc = tuple(range(6))
    lifted = lift_subdivide(g, cycle_homog(g, cyc, 0), 3, k=2)
    back = contract_path_to_edge(lifted.graph, lifted.inequality, [3, 6, 4])
    assert back.verified
    tag, _ = classify_family(back.graph)
    assert tag == Cycle(6)


def test_contract_path_hypothesis_violation():
    # constant coefficients and a bond crossing the path twice
    g = generate(Cycle(6))
    with pytest.raises(HypothesisViolated):
        contract_path_to_edge(g, cycle_sum(g, tuple(range(6))), [0, 1, 2])


def test_contract_path_needs_degree_two_interior():
    g = generate(Wheel(4))
    ineq = cycle_sum(g, (0, 1, 4))
    with pytest.raises(InvalidParameter):
        contract_path_to_edge(g, ineq, [0, 1, 2])
