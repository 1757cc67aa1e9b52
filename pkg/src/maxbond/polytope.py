"""Exact-rational polyhedral workbench over bond polytopes.

Coordinates are always indexed by a graph's canonical edge order. All
computation is in exact integers/rationals; facet verdicts are rank
decisions and must not go through floats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .errors import (
    HypothesisViolated,
    InvalidParameter,
    NotAFacet,
    SizeCapExceeded,
)
from .graphs import Graph, build_graph, cycle_edges, generate, Cycle, Wheel
from .oracle import (
    BondCut,
    Constraint,
    enumerate_bonds,
    enumerate_cuts,
    is_interleaved,
    max_bond_oracle,
)

DEFAULT_EDGE_CAP = 12


@dataclass(frozen=True)
class LinearInequality:
    """a.x <= rhs with primitive integer coefficients (gcd 1)."""

    coeffs: tuple[int, ...]
    rhs: int
    tag: str = ""

    @staticmethod
    def make(coeffs: Sequence, rhs, tag: str = "") -> "LinearInequality":
        fracs = [Fraction(c) for c in coeffs]
        frhs = Fraction(rhs)
        if all(c == 0 for c in fracs):
            raise InvalidParameter("zero coefficient vector")
        denom = 1
        for c in fracs + [frhs]:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        ints = [int(c * denom) for c in fracs]
        irhs = int(frhs * denom)
        g = 0
        for v in ints + [irhs]:
            g = gcd(g, abs(v))
        return LinearInequality(tuple(v // g for v in ints), irhs // g, tag)

    def key(self) -> tuple:
        return (self.coeffs, self.rhs)

    def evaluate(self, point: Sequence[int]) -> int:
        return sum(c * x for c, x in zip(self.coeffs, point))

    def same_as(self, other: "LinearInequality") -> bool:
        return self.key() == other.key()


@dataclass(frozen=True)
class FacetReport:
    valid: bool
    tight: bool
    face_dim: int
    facet_defining: bool
    tight_bond_count: int
    violating_bond: Optional[BondCut] = None


def bond_vectors(g: Graph, node_cap: int = 24) -> list[tuple[int, ...]]:
    m = g.edge_count
    return [tuple(1 if e in b.edge_set else 0 for e in range(m))
            for b in enumerate_bonds(g, node_cap)]


def cut_vectors(g: Graph, node_cap: int = 24) -> list[tuple[int, ...]]:
    m = g.edge_count
    return [tuple(1 if e in c.edge_set else 0 for e in range(m))
            for c in enumerate_cuts(g, node_cap)]


def affine_dim(points: Sequence[Sequence]) -> int:
    """Exact affine dimension of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    rows = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)]
            for p in points[1:]]
    return _rank(rows)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    cols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0),
                   None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / pr[c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank


def check_inequality(g: Graph, ineq: LinearInequality,
                     node_cap: int = 24) -> FacetReport:
    """Validity, tightness and facet verdict over all bonds of g."""
    if len(ineq.coeffs) != g.edge_count:
        raise InvalidParameter("coefficient vector length mismatch")
    m = g.edge_count
    tight_points: list[tuple[int, ...]] = []
    violator = None
    valid = True
    for b in enumerate_bonds(g, node_cap):
        vec = tuple(1 if e in b.edge_set else 0 for e in range(m))
        val = ineq.evaluate(vec)
        if val > ineq.rhs:
            valid = False
            if violator is None:
                violator = b
        elif val == ineq.rhs:
            tight_points.append(vec)
    fdim = affine_dim(tight_points)
    return FacetReport(
        valid=valid,
        tight=bool(tight_points),
        face_dim=fdim,
        facet_defining=valid and fdim == m - 1,
        tight_bond_count=len(tight_points),
        violating_bond=violator,
    )


# ---------------------------------------------------------------------------
# Facet enumeration by incremental double description.
#
# A valid inequality a.x <= b corresponds to the ray y = (b, -a) of the cone
# { y : <y, (1, p)> >= 0 for every bond vector p }.  The polytope is bounded
# and full-dimensional, so the cone is pointed and its extreme rays are
# exactly the facet-defining inequalities.


def _primitive(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for v in vec:
        g = gcd(g, abs(v))
    return tuple(v // g for v in vec) if g > 1 else tuple(vec)


def _extreme_rays(constraints: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Extreme rays of {y : c.y >= 0 for all c}; needs full-rank input."""
    d = len(constraints[0])
    # initial simplicial basis: d independent constraint rows
    basis_idx: list[int] = []
    rows: list[list[Fraction]] = []
    for i, c in enumerate(constraints):
        trial = rows + [[Fraction(x) for x in c]]
        if _rank(trial) == len(trial):
            rows = trial
            basis_idx.append(i)
            if len(rows) == d:
                break
    if len(rows) < d:
        raise InvalidParameter("constraint matrix is rank-deficient")
    # rays = columns of B^-1, scaled to integers
    inv = _matrix_inverse(rows)
    rays: list[tuple[int, ...]] = []
    zsets: list[int] = []
    for j in range(d):
        col = [inv[i][j] for i in range(d)]
        denom = 1
        for x in col:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        ray = _primitive([int(x * denom) for x in col])
        z = 0
        for k, bi in enumerate(basis_idx):
            if k != j:
                z |= 1 << bi
        rays.append(ray)
        zsets.append(z)
    processed = set(basis_idx)
    for idx, c in enumerate(constraints):
        if idx in processed:
            continue
        vals = [sum(a * b for a, b in zip(c, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            for i in zero:
                zsets[i] |= 1 << idx
            processed.add(idx)
            continue
        new_rays: list[tuple[int, ...]] = []
        new_z: list[int] = []
        for i in pos + zero:
            new_rays.append(rays[i])
            new_z.append(zsets[i] | (1 << idx if vals[i] == 0 else 0))
        for i in pos:
            for j in neg:
                meet = zsets[i] & zsets[j]
                # adjacency: no third ray's zero set contains the meet
                adjacent = True
                for k in range(len(rays)):
                    if k != i and k != j and meet & zsets[k] == meet:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                comb = [vals[i] * rays[j][t] - vals[j] * rays[i][t]
                        for t in range(d)]
                new_rays.append(_primitive(comb))
                new_z.append(meet | (1 << idx))
        rays, zsets = new_rays, new_z
        processed.add(idx)
    return rays


def _matrix_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    d = len(rows)
    aug = [rows[i][:] + [Fraction(int(i == j)) for j in range(d)]
           for i in range(d)]
    for c in range(d):
        piv = next(i for i in range(c, d) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(d):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [r[d:] for r in aug]


def facet_enumeration_points(points: Sequence[Sequence[int]],
                             edge_cap: int = DEFAULT_EDGE_CAP
                             ) -> list[LinearInequality]:
    """Facets of the convex hull of a full-dimensional 0/1 point set."""
    d = len(points[0])
    if d > edge_cap:
        raise SizeCapExceeded(f"{d} coordinates exceeds hull cap {edge_cap}")
    constraints = [(1,) + tuple(p) for p in points]
    out = []
    for ray in _extreme_rays(constraints):
        b, coeffs = ray[0], [-x for x in ray[1:]]
        out.append(LinearInequality.make(coeffs, b))
    return sorted(out, key=LinearInequality.key)


def facet_enumeration(g: Graph, edge_cap: int = DEFAULT_EDGE_CAP
                      ) -> list[LinearInequality]:
    """Complete irredundant facet list of the bond polytope of g."""
    return facet_enumeration_points(bond_vectors(g), edge_cap)


def verify_description(g: Graph, candidate: Iterable[LinearInequality],
                       edge_cap: int = DEFAULT_EDGE_CAP
                       ) -> tuple[bool, list[LinearInequality],
                                  list[LinearInequality]]:
    """Set-compare a candidate list against the enumerated facets.

    Returns (equal, missing, extra).
    """
    actual = {f.key(): f for f in facet_enumeration(g, edge_cap)}
    cand = {c.key(): c for c in candidate}
    missing = [actual[k] for k in sorted(actual.keys() - cand.keys())]
    extra = [cand[k] for k in sorted(cand.keys() - actual.keys())]
    return (not missing and not extra), missing, extra


# ---------------------------------------------------------------------------
# Inequality families


def edge_nonneg(g: Graph, e: int) -> LinearInequality:
    coeffs = [0] * g.edge_count
    coeffs[e] = -1
    return LinearInequality.make(coeffs, 0, tag=f"edge_nonneg:{e}")


def edge_upper(g: Graph, e: int) -> LinearInequality:
    coeffs = [0] * g.edge_count
    coeffs[e] = 1
    return LinearInequality.make(coeffs, 1, tag=f"edge_upper:{e}")


def cycle_homog(g: Graph, cycle: tuple[int, ...], e: int) -> LinearInequality:
    ce = cycle_edges(g, cycle)
    if e not in ce:
        raise InvalidParameter("edge not on the cycle")
    coeffs = [0] * g.edge_count
    for f in ce:
        coeffs[f] = -1
    coeffs[e] = 1
    return LinearInequality.make(coeffs, 0, tag=f"cycle_homog:{e}")


def cycle_sum(g: Graph, cycle: tuple[int, ...]) -> LinearInequality:
    return gen_cycle_sum(g, cycle, 1)


def gen_cycle_sum(g: Graph, cycle: tuple[int, ...], k: int) -> LinearInequality:
    if k < 1:
        raise InvalidParameter("k must be positive")
    coeffs = [0] * g.edge_count
    for f in cycle_edges(g, cycle):
        coeffs[f] = 1
    return LinearInequality.make(coeffs, 2 * k, tag=f"cycle_sum:k={k}")


def cn_description(n: int) -> list[LinearInequality]:
    """Full facet list of the bond polytope of the n-cycle.

    For n >= 4 this is the 2n+1 pattern: nonnegativities, homogeneous cycle
    inequalities, and the cycle sum. For n = 3 the polytope is a simplex and
    the nonnegativities are not facets (each is tight at only 2 bonds), so
    the list has 4 members.
    """
    g = generate(Cycle(n))
    cyc = tuple(range(n))
    out = []
    if n >= 4:
        out.extend(edge_nonneg(g, e) for e in range(n))
    out.extend(cycle_homog(g, cyc, e) for e in range(n))
    out.append(cycle_sum(g, cyc))
    return out


def wheel_description(n: int) -> list[LinearInequality]:
    """The triangle + rim facet families of the wheel W_n, deduplicated."""
    g = generate(Wheel(n))
    rim = tuple(range(n))
    triangles = [(i, (i + 1) % n, n) for i in range(n)]
    seen: dict[tuple, LinearInequality] = {}

    def add(ineq: LinearInequality):
        seen.setdefault(ineq.key(), ineq)

    for tri in triangles:
        for e in cycle_edges(g, tri):
            add(cycle_homog(g, tri, e))
        add(cycle_sum(g, tri))
    for e in cycle_edges(g, rim):
        add(cycle_homog(g, rim, e))
    add(cycle_sum(g, rim))
    return list(seen.values())


def minor_free_description(g: Graph) -> list[LinearInequality]:
    """Instantiate the planar 3-connected description families on g:
    nonnegativity off triangles, homogeneous induced-cycle inequalities, and
    cycle sums for non-interleaved cycles."""
    from .graphs import enumerate_cycles, induced_cycles

    seen: dict[tuple, LinearInequality] = {}

    def add(ineq: LinearInequality):
        seen.setdefault(ineq.key(), ineq)

    triangles = [c for c in induced_cycles(g, max_len=3)]
    tri_edges = {e for t in triangles for e in cycle_edges(g, t)}
    for e in range(g.edge_count):
        if e not in tri_edges:
            add(edge_nonneg(g, e))
    for cyc in induced_cycles(g):
        for e in cycle_edges(g, cyc):
            add(cycle_homog(g, cyc, e))
    for cyc in enumerate_cycles(g):
        if not is_interleaved(g, cyc, "bonds").interleaved:
            add(cycle_sum(g, cyc))
    return list(seen.values())


# ---------------------------------------------------------------------------
# Switching


def switch(g: Graph, ineq: LinearInequality, nodes: Iterable[int]
           ) -> LinearInequality:
    """Negate coefficients across the cut of the node set and adjust the
    right-hand side. Carries no facet guarantee for bond polytopes."""
    w = set(nodes)
    coeffs = list(ineq.coeffs)
    rhs = ineq.rhs
    for i, (u, v) in enumerate(g.edges):
        if (u in w) != (v in w):
            rhs -= coeffs[i]
            coeffs[i] = -coeffs[i]
    return LinearInequality.make(coeffs, rhs, tag=ineq.tag + "|switched")


# ---------------------------------------------------------------------------
# Lifting constructions


@dataclass(frozen=True)
class LiftResult:
    graph: Graph
    inequality: LinearInequality
    verified: bool  # check_inequality re-ran on the output (in-cap only)


def _require_facet(g: Graph, ineq: LinearInequality, node_cap: int):
    report = check_inequality(g, ineq, node_cap)
    if not report.facet_defining:
        raise NotAFacet("input inequality is not facet-defining")


def _maybe_verify(g: Graph, ineq: LinearInequality, node_cap: int,
                  hull_limit: int = 18) -> bool:
    if g.node_count > hull_limit:
        return False
    report = check_inequality(g, ineq, node_cap)
    if not report.facet_defining:
        raise NotAFacet("lifted inequality failed its own facet check")
    return True


def lift_node_split(g: Graph, ineq: LinearInequality, v: int,
                    groups: tuple[Iterable[int], Iterable[int]],
                    node_cap: int = 24, verify: bool = True) -> LiftResult:
    """Split node v in two adjacent nodes, distributing its edges.

    The new edge gets coefficient rhs - omega where omega is the best bond
    of the split graph minus that edge separating the two halves, weighted
    by the transported coefficients. Both groups must be nonempty so the
    result stays 2-connected enough to carry bonds through the split edge.
    """
    _require_facet(g, ineq, node_cap)
    g1, g2 = set(groups[0]), set(groups[1])
    inc = set(g.incident_edges(v))
    if g1 | g2 != inc or g1 & g2:
        raise InvalidParameter("groups must partition the edges at v")
    if not g1 or not g2:
        raise InvalidParameter("both edge groups must be nonempty")
    v2 = g.node_count
    pairs = []
    for i, (a, b) in enumerate(g.edges):
        if i in g2:
            a, b = (v2, b) if a == v else (a, v2)
        pairs.append((a, b))
    base = build_graph(g.node_count + 1, pairs)  # split graph minus v1v2
    omega = max_bond_oracle(base, list(ineq.coeffs),
                            Constraint(separate=((v, v2),)),
                            node_cap=node_cap).value
    lifted = build_graph(g.node_count + 1, pairs + [(v, v2)])
    new_ineq = LinearInequality.make(
        list(ineq.coeffs) + [ineq.rhs - omega], ineq.rhs,
        tag=ineq.tag + "|node_split")
    ok = verify and _maybe_verify(lifted, new_ineq, node_cap)
    return LiftResult(lifted, new_ineq, ok)


def lift_triangle(g: Graph, ineq: LinearInequality, v: int,
                  groups: tuple[Iterable[int], Iterable[int], Iterable[int]],
                  node_cap: int = 24, verify: bool = True) -> LiftResult:
    """Replace node v by a triangle, distributing its edges in three groups
    (groups may be empty). Triangle edges are appended in the order
    (v1,v2), (v1,v3), (v2,v3)."""
    _require_facet(g, ineq, node_cap)
    gs = [set(grp) for grp in groups]
    inc = set(g.incident_edges(v))
    if set().union(*gs) != inc or sum(len(s) for s in gs) != len(inc):
        raise InvalidParameter("groups must partition the edges at v")
    n = g.node_count
    tri = (v, n, n + 1)
    pairs = []
    for i, (a, b) in enumerate(g.edges):
        for t in (1, 2):
            if i in gs[t]:
                a, b = (tri[t], b) if a == v else (a, tri[t])
        pairs.append((a, b))
    tri_pairs = [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
    lifted = build_graph(n + 2, pairs + tri_pairs)
    weights = list(ineq.coeffs) + [0, 0, 0]
    omega = []
    for i in range(3):
        j, k = [t for t in range(3) if t != i]
        cons = Constraint(separate=((tri[i], tri[j]), (tri[i], tri[k])))
        omega.append(max_bond_oracle(lifted, weights, cons,
                                     node_cap=node_cap).value)
    b = Fraction(ineq.rhs)
    w1, w2, w3 = (Fraction(x) for x in omega)
    tri_coeffs = [(b - w1 - w2 + w3) / 2,
                  (b - w1 + w2 - w3) / 2,
                  (b + w1 - w2 - w3) / 2]
    new_ineq = LinearInequality.make(
        [Fraction(c) for c in ineq.coeffs] + tri_coeffs, b,
        tag=ineq.tag + "|triangle")
    ok = verify and _maybe_verify(lifted, new_ineq, node_cap)
    return LiftResult(lifted, new_ineq, ok)


def lift_subdivide(g: Graph, ineq: LinearInequality, e: int, k: int = 2,
                   node_cap: int = 24, verify: bool = True) -> LiftResult:
    """Subdivide edge e into k segments; all segments inherit e's
    coefficient.

    Requires a_e <= rhs/2, and additionally a tight bond through e must
    exist: that is guaranteed whenever a_e != 0 and the inequality is not
    the nonnegativity of e itself; with a_e = 0 it is checked directly.
    """
    _require_facet(g, ineq, node_cap)
    if k < 2:
        raise InvalidParameter("need at least 2 segments")
    if Fraction(ineq.coeffs[e]) > Fraction(ineq.rhs, 2):
        raise HypothesisViolated("edge coefficient exceeds half the rhs")
    nonneg_e = tuple(-1 if i == e else 0 for i in range(g.edge_count))
    if ineq.coeffs == nonneg_e and ineq.rhs == 0:
        raise HypothesisViolated(
            "cannot subdivide the edge of its own nonnegativity facet")
    if ineq.coeffs[e] == 0:
        tight_through_e = any(
            e in b.edge_set
            and sum(ineq.coeffs[f] for f in b.edge_set) == ineq.rhs
            for b in enumerate_bonds(g, node_cap))
        if not tight_through_e:
            raise HypothesisViolated("no tight bond passes through the edge")
    u, w = g.edges[e]
    n = g.node_count
    chain = [u] + list(range(n, n + k - 1)) + [w]
    pairs = []
    for i, (a, b) in enumerate(g.edges):
        pairs.append((chain[0], chain[1]) if i == e else (a, b))
    pairs.extend((chain[t], chain[t + 1]) for t in range(1, k))
    lifted = build_graph(n + k - 1, pairs)
    ae = ineq.coeffs[e]
    new_ineq = LinearInequality.make(
        list(ineq.coeffs) + [ae] * (k - 1), ineq.rhs,
        tag=ineq.tag + "|subdivide")
    ok = verify and _maybe_verify(lifted, new_ineq, node_cap)
    return LiftResult(lifted, new_ineq, ok)


def contract_path_to_edge(g: Graph, ineq: LinearInequality,
                          path: Sequence[int], node_cap: int = 24,
                          verify: bool = True) -> LiftResult:
    """Replace an induced path (internal nodes of degree 2) by one edge
    carrying the path's maximum coefficient.

    Hypotheses, checked over the enumerated tight bonds: the inequality is
    not a nonnegativity of a path edge, and either two path edges have
    different coefficients or no tight bond crosses the path twice.
    """
    _require_facet(g, ineq, node_cap)
    path = list(path)
    if len(path) < 3:
        raise InvalidParameter("path must have at least 2 edges")
    p_edges = []
    for a, b in zip(path, path[1:]):
        if not g.has_edge(a, b):
            raise InvalidParameter(f"missing path edge ({a},{b})")
        p_edges.append(g.edge_id(a, b))
    internal = path[1:-1]
    for v in internal:
        if g.degree(v) != 2:
            raise InvalidParameter(f"internal node {v} has degree != 2")
    # induced: endpoints must not be adjacent except through the path
    for i, x in enumerate(path):
        for y in path[i + 2:]:
            if g.has_edge(x, y):
                raise InvalidParameter("path is not induced")
    for e in p_edges:
        nn = edge_nonneg(g, e)
        if ineq.same_as(nn):
            raise HypothesisViolated(
                "inequality is the nonnegativity of a path edge")
    coeffs_on_path = [ineq.coeffs[e] for e in p_edges]
    if len(set(coeffs_on_path)) == 1:
        m = g.edge_count
        for b in enumerate_bonds(g, node_cap):
            if ineq.evaluate(tuple(1 if e in b.edge_set else 0
                                   for e in range(m))) != ineq.rhs:
                continue
            if len(b.edge_set & set(p_edges)) == 2:
                raise HypothesisViolated(
                    "constant path coefficients with a doubly tight bond")
    big_m = max(coeffs_on_path)
    # rebuild without internal nodes; the new edge takes the slot of the
    # first path edge, the other path edges disappear
    drop = set(internal)
    remap = {}
    nxt = 0
    for v in range(g.node_count):
        if v not in drop:
            remap[v] = nxt
            nxt += 1
    pairs = []
    coeffs = []
    first = min(p_edges)
    for i, (a, b) in enumerate(g.edges):
        if i == first:
            pairs.append((remap[path[0]], remap[path[-1]]))
            coeffs.append(big_m)
        elif i in p_edges:
            continue
        else:
            pairs.append((remap[a], remap[b]))
            coeffs.append(ineq.coeffs[i])
    contracted = build_graph(nxt, pairs)
    new_ineq = LinearInequality.make(coeffs, ineq.rhs,
                                     tag=ineq.tag + "|contract_path")
    ok = verify and _maybe_verify(contracted, new_ineq, node_cap)
    return LiftResult(contracted, new_ineq, ok)


# ---------------------------------------------------------------------------
# Contraction / hyperplane-section identity


def contraction_polytope_check(g: Graph, e: int, node_cap: int = 24) -> bool:
    """The bond polytope of G/e equals the slice x_e = 0 of the bond
    polytope of G, checked as bond-vector set equality."""
    from .graphs import contract_edge

    h, _, edge_map = contract_edge(g, e)
    m = g.edge_count
    lifted = set()
    for vec in bond_vectors(h, node_cap):
        lifted.add(tuple(
            0 if (i == e or edge_map[i] is None) else vec[edge_map[i]]
            for i in range(m)))
    sliced = {vec for vec in bond_vectors(g, node_cap) if vec[e] == 0}
    return lifted == sliced
