"""Reproduction suite: the twelve release checks behind `maxbond suite`.

Each check is a pure function returning (passed, detail). The corpus of
small named graphs and the seeded random instances are fixed here so the
suite is deterministic across runs and machines.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import HypothesisViolated, InvalidParameter, NotAFacet
from .graphs import (
    Graph,
    K33,
    K3,
    K5_MINUS_E,
    PRISM,
    Cycle,
    Wagner,
    Wheel,
    articulation_points,
    build_graph,
    enumerate_cycles,
    fixture,
    generate,
    is_connected,
)
from .oracle import enumerate_bonds, is_interleaved, max_bond_oracle
from .polytope import (
    LinearInequality,
    affine_dim,
    bond_vectors,
    check_inequality,
    cn_description,
    contract_path_to_edge,
    contraction_polytope_check,
    facet_enumeration,
    gen_cycle_sum,
    lift_node_split,
    lift_subdivide,
    lift_triangle,
    minor_free_description,
    verify_description,
    wheel_description,
)
from .solver import k5e_max_bond, max_bond, wheel_max_bond
from .spqr import spr_tree, validate

SUITE_SEED = 20260825


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


# ---------------------------------------------------------------------------
# corpus


def generated_corpus(node_limit: int = 9) -> list[tuple[str, Graph]]:
    out = []
    for n in range(3, node_limit + 1):
        out.append((f"cycle{n}", generate(Cycle(n))))
    for n in range(3, node_limit):
        if n + 1 <= node_limit:
            out.append((f"wheel{n}", generate(Wheel(n))))
    for n in (6, 8):
        if n <= node_limit:
            out.append((f"wagner{n}", generate(Wagner(n))))
    out.append(("prism", generate(PRISM)))
    out.append(("k3", generate(K3)))
    out.append(("k33", generate(K33)))
    out.append(("k5e", generate(K5_MINUS_E)))
    return out


def full_corpus() -> list[tuple[str, Graph]]:
    return generated_corpus() + [(name, fixture(name))
                                 for name in ("fig2g", "fig2g+e", "fig3")]


def random_connected_graph(rng: random.Random, n_min: int, n_max: int,
                           m_max: int) -> Graph:
    n = rng.randint(n_min, n_max)
    perm = list(range(n))
    rng.shuffle(perm)
    edges = set()
    for i in range(1, n):
        u, v = perm[rng.randrange(i)], perm[i]
        edges.add((min(u, v), max(u, v)))
    pool = [p for p in itertools.combinations(range(n), 2)
            if p not in edges]
    rng.shuffle(pool)
    extra = rng.randint(0, max(0, min(m_max, len(edges) + len(pool))
                               - len(edges)))
    edges.update(pool[:extra])
    return build_graph(n, sorted(edges))


def wheel_chain(k: int, n: int) -> Graph:
    """k wheels with rim size n glued in a path of strict 2-sums along
    shared rim edges. The SPR-tree is k R-wheels linked by k-1 bundles."""
    edges = []
    node_count = 0
    glue = None
    for _ in range(k):
        if glue is None:
            base = list(range(n))
            center = n
            node_count = n + 1
            edges.extend((base[i], base[(i + 1) % n]) for i in range(n))
        else:
            a, b = glue
            base = [a, b] + list(range(node_count, node_count + n - 2))
            center = node_count + n - 2
            node_count += n - 1
            # the glued rim edge (a, b) stays from the previous wheel
            edges.extend((base[i], base[(i + 1) % n]) for i in range(1, n))
        edges.extend((base[i], center) for i in range(n))
        glue = (base[2], base[3])
    pairs = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return build_graph(node_count, pairs)


def _is_valid_bond(g: Graph, side: frozenset[int],
                   edge_set: frozenset[int]) -> bool:
    cross = frozenset(i for i, (u, v) in enumerate(g.edges)
                      if (u in side) != (v in side))
    if cross != edge_set:
        return False
    for part in (set(side), set(range(g.node_count)) - set(side)):
        if not part:
            continue
        seen = {next(iter(part))}
        stack = list(seen)
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if w in part and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != part:
            return False
    return True


# ---------------------------------------------------------------------------
# checks


def check_solver_oracle() -> tuple[bool, str]:
    rng = random.Random(SUITE_SEED)
    for trial in range(500):
        g = random_connected_graph(rng, 2, 10, 20)
        w = [rng.randint(-20, 20) for _ in range(g.edge_count)]
        ref = max_bond_oracle(g, w)
        got = max_bond(g, w)
        if got.value != ref.value:
            return False, f"trial {trial}: {got.value} != {ref.value}"
        if sum(w[e] for e in got.bond.edge_set) != got.value:
            return False, f"trial {trial}: bond does not re-evaluate"
        if not _is_valid_bond(g, got.bond.side, got.bond.edge_set):
            return False, f"trial {trial}: returned cut is not a bond"
    return True, "500 random graphs, exact agreement"


def check_cycle_description() -> tuple[bool, str]:
    for n in range(3, 9):
        g = generate(Cycle(n))
        equal, missing, extra = verify_description(g, cn_description(n))
        if not equal:
            return False, (f"C{n}: {len(missing)} missing, "
                           f"{len(extra)} extra")
    return True, "C3..C8 facet lists match"


def check_wheel_description() -> tuple[bool, str]:
    for n in (3, 4, 5):
        g = generate(Wheel(n))
        equal, missing, extra = verify_description(g, wheel_description(n))
        if not equal:
            return False, (f"W{n}: {len(missing)} missing, "
                           f"{len(extra)} extra")
    g = generate(PRISM)
    equal, missing, extra = verify_description(g, minor_free_description(g))
    if not equal:
        return False, f"prism: {len(missing)} missing, {len(extra)} extra"
    return True, "W3..W5 and Prism facet lists match"


def check_k5e_facet() -> tuple[bool, str]:
    g = generate(K5_MINUS_E)
    ineq = LinearInequality.make([1, 1, 0, 1, 1, 0, 1, -1, -1], 2)
    rep = check_inequality(g, ineq)
    if not rep.facet_defining:
        return False, "inequality is not facet-defining"
    if not any(f.same_as(ineq) for f in facet_enumeration(g)):
        return False, "inequality missing from the enumeration"
    return True, "facet-defining and present in the enumeration"


def check_wagner_and_k5() -> tuple[bool, str]:
    for n in (6, 8):
        g = generate(Wagner(n))
        outer = tuple(range(n))
        if not check_inequality(g, gen_cycle_sum(g, outer, 2)).facet_defining:
            return False, f"V{n}: outer k=2 inequality not a facet"
        for e in range(g.edge_count):
            coeffs = [0] * g.edge_count
            coeffs[e] = 1
            rep = check_inequality(g, LinearInequality.make(coeffs, 1))
            if not rep.facet_defining:
                return False, f"V{n}: x_e <= 1 not a facet for edge {e}"
    k5 = build_graph(5, list(itertools.combinations(range(5), 2)))
    rep = check_inequality(k5, gen_cycle_sum(k5, (0, 1, 2, 3, 4), 2))
    if not (rep.valid and rep.tight and not rep.facet_defining):
        return False, (f"K5 5-cycle: valid={rep.valid} tight={rep.tight} "
                       f"facet={rep.facet_defining}")
    return True, "V6/V8 facets confirmed; K5 inequality tight non-facet"


def check_cycle_sum_examples() -> tuple[bool, str]:
    k33 = generate(K33)
    rep = check_inequality(k33, gen_cycle_sum(k33, tuple(range(6)), 2))
    if not rep.facet_defining:
        return False, "K3,3 hexagon k=2 inequality not a facet"
    c6 = generate(Cycle(6))
    rep = check_inequality(c6, gen_cycle_sum(c6, tuple(range(6)), 2))
    if not (rep.valid and not rep.tight):
        return False, "C6 k=2 inequality should be valid and slack"
    f2 = fixture("fig2g")
    rep = check_inequality(f2, gen_cycle_sum(f2, tuple(range(6)), 1))
    if not rep.facet_defining:
        return False, "outer cycle-sum not a facet on the figure graph"
    f2e = fixture("fig2g+e")
    rep = check_inequality(f2e, gen_cycle_sum(f2e, tuple(range(6)), 1))
    if rep.valid or rep.violating_bond is None:
        return False, "added chord should break validity with a witness"
    return True, "hexagon and figure-graph cases all as predicted"


def check_interleave_agreement() -> tuple[bool, str]:
    rng = random.Random(SUITE_SEED + 7)
    graphs = [g for _, g in generated_corpus(9)]
    graphs += [random_connected_graph(rng, 3, 8, 16) for _ in range(200)]
    cycles_seen = 0
    for g in graphs:
        for cyc in enumerate_cycles(g):
            cycles_seen += 1
            a = is_interleaved(g, cyc, method="bonds").interleaved
            b = is_interleaved(g, cyc, method="paths").interleaved
            if a != b:
                return False, f"disagreement on {cyc} of {g.edges}"
    return True, f"{cycles_seen} cycles, zero disagreements"


def check_dimension() -> tuple[bool, str]:
    for name, g in full_corpus():
        if affine_dim(bond_vectors(g)) != g.edge_count:
            return False, f"{name}: affine dimension below |E|"
    return True, "affine dimension equals |E| on the whole corpus"


def _lift_bases() -> list[tuple[Graph, list[LinearInequality]]]:
    bases = []
    for tag in [Cycle(3), Cycle(4), Cycle(5), Cycle(6), Wheel(3), Wheel(4)]:
        g = generate(tag)
        bases.append((g, facet_enumeration(g)))
    return bases


def check_lifting() -> tuple[bool, str]:
    rng = random.Random(SUITE_SEED + 9)
    bases = _lift_bases()
    counts = {}

    def run(op: str, apply_once: Callable) -> Optional[str]:
        done = 0
        for attempt in range(4000):
            if done == 50:
                break
            g, facets = bases[rng.randrange(len(bases))]
            ineq = facets[rng.randrange(len(facets))]
            try:
                res = apply_once(g, ineq)
            except (HypothesisViolated, InvalidParameter):
                continue
            except NotAFacet:
                return f"{op}: lifted inequality failed its facet check"
            if not res.verified:
                return f"{op}: produced an unverified in-cap output"
            done += 1
        if done < 50:
            return f"{op}: only {done} applications found"
        counts[op] = done
        return None

    def do_node_split(g, ineq):
        v = rng.randrange(g.node_count)
        inc = list(g.incident_edges(v))
        if len(inc) < 2:
            raise InvalidParameter("degree too small")
        rng.shuffle(inc)
        cut = rng.randint(1, len(inc) - 1)
        return lift_node_split(g, ineq, v, (inc[:cut], inc[cut:]))

    def do_triangle(g, ineq):
        v = rng.randrange(g.node_count)
        inc = list(g.incident_edges(v))
        rng.shuffle(inc)
        a = rng.randint(0, len(inc))
        b = rng.randint(a, len(inc))
        return lift_triangle(g, ineq, v, (inc[:a], inc[a:b], inc[b:]))

    def do_subdivide(g, ineq):
        e = rng.randrange(g.edge_count)
        return lift_subdivide(g, ineq, e, k=rng.randint(2, 3))

    def do_contract(g, ineq):
        deg2 = [v for v in range(g.node_count) if g.degree(v) == 2]
        if not deg2:
            raise InvalidParameter("no degree-2 nodes")
        v = deg2[rng.randrange(len(deg2))]
        a, b = g.adjacency[v]
        return contract_path_to_edge(g, ineq, [a, v, b])

    for op, fn in [("node-split", do_node_split), ("triangle", do_triangle),
                   ("subdivide", do_subdivide), ("contract-path", do_contract)]:
        err = run(op, fn)
        if err:
            return False, err
    return True, "50 verified applications of each operation"


def check_linear_time() -> tuple[bool, str]:
    rng = random.Random(SUITE_SEED + 11)
    # direct wheel solver vs oracle at small sizes
    for n in range(3, 13):
        g = generate(Wheel(n))
        for _ in range(5):
            rim = [rng.randint(-20, 20) for _ in range(n)]
            spokes = [rng.randint(-20, 20) for _ in range(n)]
            ref = max_bond_oracle(g, rim + spokes).value
            if wheel_max_bond(n, rim, spokes)[0] != ref:
                return False, f"wheel solver wrong on W{n}"
    n = 10 ** 6
    rim = [rng.randint(-50, 50) for _ in range(n)]
    spokes = [rng.randint(-50, 50) for _ in range(n)]
    t0 = time.perf_counter()
    wheel_max_bond(n, rim, spokes)
    big_wheel = time.perf_counter() - t0
    if big_wheel >= 1.0:
        return False, f"W(10^6) took {big_wheel:.2f}s (budget 1s)"
    # decomposition pipeline on small chains vs oracle
    for k in (1, 2, 3):
        g = wheel_chain(k, 4)
        for _ in range(5):
            w = [rng.randint(-10, 10) for _ in range(g.edge_count)]
            if k5e_max_bond(g, w).value != max_bond_oracle(g, w).value:
                return False, f"chain of {k} wheels disagrees with oracle"
    g = wheel_chain(10 ** 4, 4)
    w = [rng.randint(-20, 20) for _ in range(g.edge_count)]
    t0 = time.perf_counter()
    k5e_max_bond(g, w)
    chain = time.perf_counter() - t0
    if chain >= 5.0:
        return False, f"10^4-wheel chain took {chain:.2f}s (budget 5s)"
    return True, (f"W(10^6) in {big_wheel:.2f}s; "
                  f"10^4-wheel chain in {chain:.2f}s")


def check_spr_tree() -> tuple[bool, str]:
    for name, g in full_corpus():
        if g.node_count >= 3 and is_connected(g) \
                and not articulation_points(g):
            t = spr_tree(g)
            rep = validate(t, g)
            if not rep.ok:
                return False, f"{name}: {rep.problems[:1]}"
    k4e = build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])
    kinds = sorted(sk.kind for sk in spr_tree(k4e).skeletons)
    if kinds != ["P", "S", "S"]:
        return False, f"K4-e decomposed into {kinds}"
    for n in range(3, 9):
        kinds = [sk.kind for sk in spr_tree(generate(Cycle(n))).skeletons]
        if kinds != ["S"]:
            return False, f"C{n} decomposed into {kinds}"
    kinds = [sk.kind for sk in spr_tree(generate(Wagner(8))).skeletons]
    if kinds != ["R"]:
        return False, f"V8 decomposed into {kinds}"
    return True, "all corpus trees validate; shapes as expected"


def check_contraction() -> tuple[bool, str]:
    checked = 0
    for name, g in full_corpus():
        if g.node_count > 8:
            continue
        for e in range(g.edge_count):
            if not contraction_polytope_check(g, e):
                return False, f"{name}: slice mismatch at edge {e}"
            checked += 1
    return True, f"{checked} edge contractions match the x_e=0 slice"


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]], float]] = [
    ("solver-oracle-equivalence", check_solver_oracle, 60.0),
    ("cycle-facet-description", check_cycle_description, 30.0),
    ("wheel-prism-facet-description", check_wheel_description, 0.0),
    ("k5e-example-facet", check_k5e_facet, 0.0),
    ("wagner-facets-k5-nonfacet", check_wagner_and_k5, 0.0),
    ("cycle-sum-examples", check_cycle_sum_examples, 0.0),
    ("interleave-methods-agree", check_interleave_agreement, 0.0),
    ("polytope-dimension", check_dimension, 0.0),
    ("lifting-operations", check_lifting, 0.0),
    ("linear-time-solvers", check_linear_time, 0.0),
    ("spr-tree-validation", check_spr_tree, 0.0),
    ("edge-contraction-slice", check_contraction, 0.0),
]


def run_suite(name_filter: Optional[str] = None) -> list[CheckResult]:
    results = []
    for name, fn, budget in CHECKS:
        if name_filter and name_filter not in name:
            continue
        t0 = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - t0
        if passed and budget and elapsed >= budget:
            passed = False
            detail = f"over time budget: {elapsed:.1f}s >= {budget:.0f}s"
        results.append(CheckResult(name, passed, detail, elapsed))
    return results
