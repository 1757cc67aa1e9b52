import itertools
import random

import pytest

from maxbond.errors import NotTwoConnected
from maxbond.graphs import (
    Cycle,
    Wagner,
    Wheel,
    articulation_points,
    build_graph,
    generate,
    is_connected,
)
from maxbond.spqr import blocks, spr_tree, validate


def kinds_of(g):
    return sorted(sk.kind for sk in spr_tree(g).skeletons)


def test_shapes():
    assert kinds_of(generate(Cycle(6))) == ["S"]
    assert kinds_of(generate(Wheel(5))) == ["R"]
    assert kinds_of(generate(Wagner(8))) == ["R"]
    k4e = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    assert kinds_of(k4e) == ["P", "S", "S"]


def test_theta_graph():
    # two nodes joined by three internally disjoint paths
    theta = build_graph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    assert kinds_of(theta) == ["P", "S", "S", "S"]
    assert validate(spr_tree(theta), theta).ok


def test_rejects_non_two_connected():
    with pytest.raises(NotTwoConnected):
        spr_tree(build_graph(3, [(0, 1), (1, 2)]))
    with pytest.raises(NotTwoConnected):
        spr_tree(build_graph(4, [(0, 1), (2, 3)]))


def random_two_connected(rng):
    n = rng.randint(3, 9)
    edges = {(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)}
    pool = list(itertools.combinations(range(n), 2))
    rng.shuffle(pool)
    edges.update(pool[:rng.randint(0, 2 * n)])
    return build_graph(n, sorted(edges))


def test_random_graphs_validate_and_are_seed_independent():
    rng = random.Random(404)
    done = 0
    while done < 60:
        g = random_two_connected(rng)
        if articulation_points(g) or not is_connected(g):
            continue
        t = spr_tree(g, seed=0)
        rep = validate(t, g)
        assert rep.ok, rep.problems
        assert spr_tree(g, seed=123) == t
        done += 1


def test_twin_links_pair_up():
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5),
                        (0, 3)])
    t = spr_tree(g)
    seen = {}
    for sk in t.skeletons:
        for e in sk.edges:
            if e.link is not None:
                seen.setdefault(e.link, []).append((e.u, e.v))
    for link, ends in seen.items():
        assert len(ends) == 2 and ends[0] == ends[1]
    assert len(t.tree_edges) == len(t.skeletons) - 1


def test_blocks_decomposition():
    bowtie = build_graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    bs = blocks(bowtie)
    assert len(bs) == 2
    for blk, nmap, emap in bs:
        assert blk.edge_count == 3 and blk.node_count == 3
        for i, (u, v) in enumerate(blk.edges):
            a, b = bowtie.edges[emap[i]]
            assert {nmap[u], nmap[v]} == {a, b}


def test_bridge_is_its_own_block():
    g = build_graph(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
    sizes = sorted(blk.edge_count for blk, _, _ in blocks(g))
    assert sizes == [1, 3]
