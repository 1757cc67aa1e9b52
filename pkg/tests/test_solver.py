import itertools
import random

import pytest

from maxbond.errors import Infeasible, NotK5eMinorFree
from maxbond.graphs import Wagner, Wheel, build_graph, generate
from maxbond.oracle import constraint, max_bond_oracle
from maxbond.solver import (
    k5e_max_bond,
    max_bond,
    solve_skeleton_P,
    solve_skeleton_S,
    wheel_max_bond,
)
from maxbond.spqr import Skeleton, SkeletonEdge


def _cycle_skeleton(weights):
    n = len(weights)
    edges = tuple(SkeletonEdge(i, (i + 1) % n, i, None) for i in range(n))
    return Skeleton("S", edges), {("r", i): w for i, w in enumerate(weights)}


def test_cycle_skeleton_solver():
    sk, w = _cycle_skeleton([-4, -3, -1])
    assert solve_skeleton_S(sk, w).value == 0
    sol = solve_skeleton_S(sk, w, forced_in=frozenset({("r", 0)}))
    assert sol.value == -5
    assert sol.cut == {("r", 0), ("r", 2)}
    sk, w = _cycle_skeleton([5, 2, 7, 1])
    sol = solve_skeleton_S(sk, w)
    assert sol.value == 12 and sol.cut == {("r", 0), ("r", 2)}
    with pytest.raises(Infeasible):
        solve_skeleton_S(sk, w, forced_in=frozenset(
            {("r", 0), ("r", 1), ("r", 2)}))


def test_bundle_skeleton_solver():
    edges = tuple(SkeletonEdge(0, 1, i, None) for i in range(3))
    sk = Skeleton("P", edges)
    w = {("r", 0): 4, ("r", 1): -1, ("r", 2): -1}
    assert solve_skeleton_P(sk, w).value == 2
    assert solve_skeleton_P(sk, {k: -v for k, v in w.items()}).value == 0
    forced = frozenset({("r", 1)})
    assert solve_skeleton_P(sk, w, forced_in=forced).value == 2
    with pytest.raises(Infeasible):
        solve_skeleton_P(sk, w, forced_in=forced,
                         forced_out=frozenset({("r", 0)}))


def test_wheel_solver_against_oracle():
    rng = random.Random(9)
    for n in range(3, 9):
        g = generate(Wheel(n))
        for _ in range(25):
            rim = [rng.randint(-12, 12) for _ in range(n)]
            spokes = [rng.randint(-12, 12) for _ in range(n)]
            ref = max_bond_oracle(g, rim + spokes).value
            val, side = wheel_max_bond(n, rim, spokes)
            assert val == ref
            # the reported side must re-evaluate to the value
            if side == {n}:
                assert val == sum(spokes)
            elif side:
                arc = sorted(side)
                assert val == sum(spokes[i] for i in side) + sum(
                    rim[i] for i in range(n)
                    if (i in side) != ((i + 1) % n in side))


def test_wheel_solver_constrained():
    rng = random.Random(10)
    for n in (3, 5, 7):
        g = generate(Wheel(n))
        for _ in range(20):
            w = [rng.randint(-9, 9) for _ in range(2 * n)]
            e = rng.randrange(2 * n)
            label = ("rim", e) if e < n else ("spoke", e - n)
            ref = max_bond_oracle(g, w, constraint(forced_in=[e])).value
            val, _ = wheel_max_bond(n, w[:n], w[n:],
                                    forced_in=frozenset({label}))
            assert val == ref
            ref = max_bond_oracle(g, w, constraint(forced_out=[e])).value
            val, _ = wheel_max_bond(n, w[:n], w[n:],
                                    forced_out=frozenset({label}))
            assert val == ref


def random_connected(rng):
    n = rng.randint(2, 9)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    for i in range(1, n):
        u, v = perm[rng.randrange(i)], perm[i]
        edges.add((min(u, v), max(u, v)))
    pool = list(itertools.combinations(range(n), 2))
    rng.shuffle(pool)
    edges.update(pool[:rng.randint(0, n)])
    return build_graph(n, sorted(edges))


def test_pipeline_matches_oracle():
    rng = random.Random(77)
    for _ in range(150):
        g = random_connected(rng)
        w = [rng.randint(-20, 20) for _ in range(g.edge_count)]
        got = max_bond(g, w)
        assert got.value == max_bond_oracle(g, w).value
        assert sum(w[e] for e in got.bond.edge_set) == got.value


def test_forced_edge_via_big_weight():
    # boosting an edge weight far enough forces it into the optimum
    rng = random.Random(78)
    for _ in range(40):
        g = random_connected(rng)
        if g.edge_count < 2:
            continue
        w = [rng.randint(-10, 10) for _ in range(g.edge_count)]
        e = rng.randrange(g.edge_count)
        big = 2 * sum(abs(x) for x in w) + 1
        boosted = list(w)
        boosted[e] += big
        got = max_bond(g, boosted)
        ref = max_bond_oracle(g, w, constraint(forced_in=[e]))
        assert e in got.bond.edge_set
        assert got.value - big == ref.value


def test_modes_and_errors():
    g = generate(Wagner(8))
    w = [1] * 12
    assert max_bond(g, w).value == max_bond(g, w, mode="oracle").value
    with pytest.raises(NotK5eMinorFree):
        k5e_max_bond(g, w)


def test_disconnected_input():
    g = build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)])
    res = max_bond(g, [-5, -3, -2, 4, 6])
    assert res.value == 6
    assert res.bond.edge_set == {4}


def test_degenerate_inputs():
    g = build_graph(3, [])
    assert max_bond(g, []).value == 0
    bridge = build_graph(2, [(0, 1)])
    assert max_bond(bridge, [7]).value == 7
    assert max_bond(bridge, [-7]).value == 0
