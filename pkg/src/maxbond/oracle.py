"""Brute-force ground truth: cut and bond enumeration, constrained maximum
bond search, and cycle interleavedness tests.

Everything here is exponential in the node count and guarded by size caps;
the rest of the package treats these answers as authoritative.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import Infeasible, InvalidParameter, SizeCapExceeded
from .graphs import Graph, cycle_edges

DEFAULT_NODE_CAP = 24


@dataclass(frozen=True)
class BondCut:
    """A cut given by its side set. Canonical side excludes node 0."""

    side: frozenset[int]
    edge_set: frozenset[int]
    is_bond: bool

    def sorted_side(self) -> list[int]:
        return sorted(self.side)

    def sorted_edges(self) -> list[int]:
        return sorted(self.edge_set)


@dataclass(frozen=True)
class Constraint:
    """Feasibility restriction for the constrained oracle.

    separate is a tuple of node pairs; each pair must end up on opposite
    sides of the cut. A single pair may be given directly.
    """

    forced_in: frozenset[int] = frozenset()
    forced_out: frozenset[int] = frozenset()
    separate: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.forced_in & self.forced_out:
            raise InvalidParameter("forced_in and forced_out overlap")
        sep = self.separate
        if sep and isinstance(sep[0], int):
            object.__setattr__(self, "separate", (tuple(sep),))

    @property
    def empty(self) -> bool:
        return not (self.forced_in or self.forced_out or self.separate)


def constraint(forced_in=(), forced_out=(), separate=()) -> Constraint:
    return Constraint(frozenset(forced_in), frozenset(forced_out),
                      tuple(separate))


NO_CONSTRAINT = Constraint()


@dataclass(frozen=True)
class SolveResult:
    value: int
    bond: BondCut


def _check_cap(g: Graph, node_cap: int):
    if g.node_count > node_cap:
        raise SizeCapExceeded(
            f"{g.node_count} nodes exceeds enumeration cap {node_cap}")


def _side_connected(mask: int, adj_masks: list[int], n_bits: int) -> bool:
    if mask == 0:
        return True
    low = mask & -mask
    seen = low
    frontier = low
    while frontier:
        nxt = 0
        m = frontier
        while m:
            b = m & -m
            m ^= b
            nxt |= adj_masks[b.bit_length() - 1]
        frontier = nxt & mask & ~seen
        seen |= frontier
    return seen == mask


def enumerate_cuts(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> Iterator[BondCut]:
    """All 2^(n-1) cuts in ascending side-bitmask order over nodes 1..n-1."""
    _check_cap(g, node_cap)
    n = g.node_count
    adj_masks = [0] * n
    for v in range(n):
        for w in g.adjacency[v]:
            adj_masks[v] |= 1 << w
    full = (1 << n) - 1
    edges = g.edges
    for mask in range(1 << max(n - 1, 0)):
        side = mask << 1  # node 0 always stays out of the side
        cut = frozenset(i for i, (u, v) in enumerate(edges)
                        if ((side >> u) ^ (side >> v)) & 1)
        other = full & ~side
        is_bond = (_side_connected(side, adj_masks, n)
                   and _side_connected(other, adj_masks, n))
        yield BondCut(frozenset(v for v in range(n) if side >> v & 1),
                      cut, is_bond)


def enumerate_bonds(g: Graph, node_cap: int = DEFAULT_NODE_CAP) -> list[BondCut]:
    return [c for c in enumerate_cuts(g, node_cap) if c.is_bond]


def _satisfies(c: BondCut, cons: Constraint) -> bool:
    if not cons.forced_in <= c.edge_set:
        return False
    if cons.forced_out & c.edge_set:
        return False
    for u, v in cons.separate:
        if (u in c.side) == (v in c.side):
            return False
    return True


def max_bond_oracle(g: Graph, weights: list[int],
                    cons: Constraint = NO_CONSTRAINT,
                    node_cap: int = DEFAULT_NODE_CAP) -> SolveResult:
    """Optimum over all bonds satisfying cons; ties go to the smallest side
    bitmask (which enumerate_cuts visits first)."""
    if len(weights) != g.edge_count:
        raise InvalidParameter("weight vector length mismatch")
    best: Optional[tuple[int, BondCut]] = None
    for c in enumerate_cuts(g, node_cap):
        if not c.is_bond or not _satisfies(c, cons):
            continue
        val = sum(weights[e] for e in c.edge_set)
        if best is None or val > best[0]:
            best = (val, c)
    if best is None:
        raise Infeasible("no bond satisfies the constraints")
    return SolveResult(best[0], best[1])


def max_cycle_intersection(g: Graph, cycle: tuple[int, ...],
                           node_cap: int = DEFAULT_NODE_CAP) -> int:
    """max over bonds of |delta cap E(C)|; always even (0 for the empty bond)."""
    ce = set(cycle_edges(g, cycle))
    best = 0
    for c in enumerate_cuts(g, node_cap):
        if c.is_bond:
            k = len(c.edge_set & ce)
            if k > best:
                best = k
    return best


# ---------------------------------------------------------------------------
# Interleavedness

PATHS_NODE_CAP = 16


def _disjoint_path(adj: list[set[int]], s: int, t: int,
                   banned: set[int]) -> Optional[list[int]]:
    """Any simple s-t path avoiding banned nodes (internal nodes only)."""
    if s == t:
        return [s]
    stack = [[s]]
    while stack:
        path = stack.pop()
        v = path[-1]
        for w in adj[v]:
            if w == t:
                return path + [t]
            if w not in banned and w not in path:
                stack.append(path + [w])
    return None


def _two_disjoint_paths(adj: list[set[int]], a: int, b: int, c: int,
                        d: int, forbidden: set[int]
                        ) -> Optional[tuple[list[int], list[int]]]:
    """Node-disjoint a-b and c-d paths avoiding forbidden, exhaustive.

    Enumerates every simple a-b path; for each, looks for a c-d path in the
    leftover. Fine at the 16-node cap.
    """
    stack: list[list[int]] = [[a]]
    while stack:
        path = stack.pop()
        v = path[-1]
        for w in adj[v]:
            if w in forbidden:
                continue
            if w == b:
                p1 = path + [b]
                used = set(p1) | forbidden
                p2 = _disjoint_path(adj, c, d, used | {c, d})
                if p2 is not None and not (set(p2) & set(p1)):
                    return p1, p2
            elif w not in path and w not in (c, d):
                stack.append(path + [w])
    return None


@dataclass(frozen=True)
class InterleaveReport:
    interleaved: bool
    quadruple: Optional[tuple[int, int, int, int]] = None
    paths: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    violating_bond: Optional[BondCut] = None


def is_interleaved(g: Graph, cycle: tuple[int, ...], method: str = "bonds",
                   node_cap: int = DEFAULT_NODE_CAP) -> InterleaveReport:
    """Test the four-node crossing-paths condition on a cycle of g.

    method 'paths' searches node quadruples in cyclic order on the cycle and
    two node-disjoint connecting paths outside E(C); method 'bonds' finds a
    bond meeting the cycle in more than two edges. The two agree on every
    graph (this equivalence is exercised heavily in the tests).
    """
    ce = set(cycle_edges(g, cycle))
    if method == "bonds":
        for c in enumerate_cuts(g, node_cap):
            if c.is_bond and len(c.edge_set & ce) > 2:
                return InterleaveReport(True, violating_bond=c)
        return InterleaveReport(False)
    if method != "paths":
        raise InvalidParameter(f"unknown method {method!r}")
    _check_cap(g, PATHS_NODE_CAP)
    # adjacency of G - E(C)
    adj: list[set[int]] = [set(a) for a in g.adjacency]
    k = len(cycle)
    for i in range(k):
        u, v = cycle[i], cycle[(i + 1) % k]
        adj[u].discard(v)
        adj[v].discard(u)
    # quadruples in cyclic order along the cycle, pairwise distinct
    for idx in itertools.combinations(range(k), 4):
        v1, v2, v3, v4 = (cycle[i] for i in idx)
        res = _two_disjoint_paths(adj, v1, v3, v2, v4, set())
        if res is not None:
            p1, p2 = res
            return InterleaveReport(True, (v1, v2, v3, v4),
                                    (tuple(p1), tuple(p2)))
    return InterleaveReport(False)
