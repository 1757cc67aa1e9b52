import pytest

from maxbond.errors import Infeasible, InvalidParameter, SizeCapExceeded
from maxbond.graphs import (
    K33,
    Cycle,
    Wagner,
    Wheel,
    build_graph,
    fixture,
    generate,
)
from maxbond.oracle import (
    Constraint,
    constraint,
    enumerate_bonds,
    enumerate_cuts,
    is_interleaved,
    max_bond_oracle,
    max_cycle_intersection,
)


def test_cut_count():
    g = generate(Cycle(4))
    cuts = list(enumerate_cuts(g))
    assert len(cuts) == 8  # 2^(n-1)
    assert all(0 not in c.side for c in cuts)


@pytest.mark.parametrize("n,expected", [(3, 4), (4, 7), (6, 16)])
def test_cycle_bond_count(n, expected):
    # empty bond plus one bond per unordered edge pair
    assert len(enumerate_bonds(generate(Cycle(n)))) == expected


def test_wheel_bond_count():
    # n(n-1) + 2 bonds: empty, center star, and the rim arcs
    for n in (3, 4, 5):
        assert len(enumerate_bonds(generate(Wheel(n)))) == n * (n - 1) + 2


def test_max_bond_basic():
    g = generate(Cycle(4))
    res = max_bond_oracle(g, [3, 1, 2, 5])
    assert res.value == 8
    assert res.bond.edge_set == {0, 3}


def test_all_negative_gives_empty_bond():
    g = generate(Cycle(4))
    res = max_bond_oracle(g, [-1, -2, -3, -4])
    assert res.value == 0 and res.bond.edge_set == frozenset()


def test_tie_break_smallest_side_mask():
    g = generate(Cycle(4))
    res = max_bond_oracle(g, [0, 0, 0, 0])
    assert res.bond.side == frozenset()


def test_constraints():
    g = generate(Cycle(4))
    w = [3, 1, 2, 5]
    assert max_bond_oracle(g, w, constraint(forced_in=[1])).value == 6
    assert max_bond_oracle(g, w, constraint(forced_out=[3])).value == 5
    res = max_bond_oracle(g, w, constraint(separate=[(0, 2)]))
    assert res.value == 8
    with pytest.raises(InvalidParameter):
        Constraint(frozenset({1}), frozenset({1}))


def test_constraint_infeasible():
    g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(Infeasible):
        # a cycle bond has exactly two edges
        max_bond_oracle(g, [1, 1, 1], constraint(forced_in=[0, 1, 2]))


def test_node_cap():
    g = build_graph(30, [(i, i + 1) for i in range(29)])
    with pytest.raises(SizeCapExceeded):
        max_bond_oracle(g, [1] * 29)


def test_max_cycle_intersection_values():
    assert max_cycle_intersection(generate(K33), tuple(range(6))) == 4
    f2 = fixture("fig2g")
    assert max_cycle_intersection(f2, tuple(range(6))) == 2
    f2e = fixture("fig2g+e")
    assert max_cycle_intersection(f2e, tuple(range(6))) == 4


def test_interleaved_wagner_both_methods():
    g = generate(Wagner(6))
    outer = tuple(range(6))
    by_bonds = is_interleaved(g, outer, method="bonds")
    by_paths = is_interleaved(g, outer, method="paths")
    assert by_bonds.interleaved and by_paths.interleaved
    assert by_bonds.violating_bond is not None
    v1, v2, v3, v4 = by_paths.quadruple
    p13, p24 = by_paths.paths
    assert p13[0] == v1 and p13[-1] == v3
    assert p24[0] == v2 and p24[-1] == v4
    assert not set(p13) & set(p24)


def test_non_interleaved_outer_cycle():
    f2 = fixture("fig2g")
    outer = tuple(range(6))
    assert not is_interleaved(f2, outer, method="bonds").interleaved
    assert not is_interleaved(f2, outer, method="paths").interleaved
    f2e = fixture("fig2g+e")
    assert is_interleaved(f2e, outer, method="bonds").interleaved
