"""Simple undirected graphs with canonical edge indexing, generators and
recognition for the small graph families used throughout the toolkit.

Edge index i always refers to the i-th pair in input order; every weight
vector and every inequality coefficient vector in the other modules is
indexed by this order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    DuplicateEdge,
    InvalidParameter,
    LoopEdge,
    NodeOutOfRange,
    NotThreeConnected,
    SizeCapExceeded,
)

INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph. ``edges[i]`` is the pair (u, v) with u < v."""

    node_count: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False)
    _edge_ids: dict = field(repr=False, hash=False, compare=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_id(self, u: int, v: int) -> int:
        """Index of edge uv; raises KeyError if absent."""
        return self._edge_ids[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edge_ids

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def incident_edges(self, v: int) -> list[int]:
        return [self.edge_id(v, w) for w in self.adjacency[v]]


def build_graph(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Build a canonical Graph on n nodes from a list of node pairs."""
    edges = []
    edge_ids: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise NodeOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"self-loop at node {u}")
        key = (u, v) if u < v else (v, u)
        if key in edge_ids:
            raise DuplicateEdge(f"duplicate edge {key}")
        edge_ids[key] = len(edges)
        edges.append(key)
        adj[u].append(v)
        adj[v].append(u)
    adjacency = tuple(tuple(sorted(a)) for a in adj)
    return Graph(n, tuple(edges), adjacency, edge_ids)


def check_weights(g: Graph, weights: Iterable[int]) -> list[int]:
    """Validate an integer weight vector against g (64-bit safety margin)."""
    from .errors import ArithmeticOverflow

    w = list(weights)
    if len(w) != g.edge_count:
        raise InvalidParameter(
            f"expected {g.edge_count} weights, got {len(w)}")
    total = sum(abs(int(x)) for x in w)
    if total > INT64_MAX:
        raise ArithmeticOverflow("sum of |weights| exceeds 64-bit range")
    return [int(x) for x in w]


# ---------------------------------------------------------------------------
# Connectivity


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.node_count
    comps = []
    for s in range(g.node_count):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    """The empty graph and the single node count as connected."""
    return len(connected_components(g)) <= 1


def _connected_avoiding(g: Graph, removed: set[int]) -> bool:
    remaining = [v for v in range(g.node_count) if v not in removed]
    if len(remaining) <= 1:
        return True
    seen = {remaining[0]}
    stack = [remaining[0]]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(remaining)


def is_k_connected(g: Graph, k: int) -> bool:
    """k-connectivity by exhaustive separator search (desk scale).

    For k = 1 this coincides with plain connectivity, including the
    degenerate empty / single-node graphs.
    """
    if k < 1:
        raise InvalidParameter("k must be positive")
    if k == 1:
        return is_connected(g)
    if g.node_count < k + 1:
        return False
    for sep in itertools.combinations(range(g.node_count), k - 1):
        if not _connected_avoiding(g, set(sep)):
            return False
    return True


def articulation_points(g: Graph) -> set[int]:
    """Cut nodes of g, iterative lowpoint DFS (handles large graphs)."""
    n = g.node_count
    visited = [False] * n
    depth = [0] * n
    low = [0] * n
    parent = [-1] * n
    points: set[int] = set()
    for root in range(n):
        if visited[root]:
            continue
        root_children = 0
        stack = [(root, iter(g.adjacency[root]))]
        visited[root] = True
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if not visited[w]:
                    visited[w] = True
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    low[w] = depth[w]
                    if v == root:
                        root_children += 1
                    stack.append((w, iter(g.adjacency[w])))
                    advanced = True
                    break
                elif w != parent[v]:
                    if depth[w] < low[v]:
                        low[v] = depth[w]
            if not advanced:
                stack.pop()
                p = parent[v]
                if p != -1:
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if p != root and low[v] >= depth[p]:
                        points.add(p)
        if root_children >= 2:
            points.add(root)
    return points


# ---------------------------------------------------------------------------
# Edge contraction


def contract_edge(g: Graph, e: int) -> tuple[Graph, list[int], list[Optional[int]]]:
    """Contract edge e; the self-loop vanishes and parallel edges merge.

    Returns (new graph, node map old->new, edge map old->new). The
    contracted edge maps to None; merged parallels map to one index.
    """
    if not (0 <= e < g.edge_count):
        raise InvalidParameter(f"edge index {e} out of range")
    a, b = g.edges[e]  # a < b; b is merged into a
    node_map = []
    for v in range(g.node_count):
        if v == b:
            node_map.append(a if a < b else a - 1)
        elif v > b:
            node_map.append(v - 1)
        else:
            node_map.append(v)
    new_pairs: list[tuple[int, int]] = []
    pair_ids: dict[tuple[int, int], int] = {}
    edge_map: list[Optional[int]] = []
    for i, (u, v) in enumerate(g.edges):
        if i == e:
            edge_map.append(None)
            continue
        nu, nv = node_map[u], node_map[v]
        if nu == nv:
            # a parallel of the contracted edge cannot exist in a simple graph
            edge_map.append(None)
            continue
        key = (nu, nv) if nu < nv else (nv, nu)
        if key in pair_ids:
            edge_map.append(pair_ids[key])
        else:
            pair_ids[key] = len(new_pairs)
            edge_map.append(len(new_pairs))
            new_pairs.append(key)
    return build_graph(g.node_count - 1, new_pairs), node_map, edge_map


# ---------------------------------------------------------------------------
# Family tags and generators


@dataclass(frozen=True)
class FamilyTag:
    """Tag for the fixed small graph families."""

    kind: str  # cycle | wheel | wagner | prism | k3 | k33 | k5_minus_e | other
    n: Optional[int] = None

    def __str__(self) -> str:
        return self.kind if self.n is None else f"{self.kind}({self.n})"


def Cycle(n: int) -> FamilyTag:
    return FamilyTag("cycle", n)


def Wheel(n: int) -> FamilyTag:
    return FamilyTag("wheel", n)


def Wagner(n: int) -> FamilyTag:
    return FamilyTag("wagner", n)


PRISM = FamilyTag("prism")
K3 = FamilyTag("k3")
K33 = FamilyTag("k33")
K5_MINUS_E = FamilyTag("k5_minus_e")
OTHER = FamilyTag("other")


def generate(tag: FamilyTag) -> Graph:
    """Canonical labeled instance of a family member.

    Layout conventions: cycle edges come first (wheel rim / Wagner outer
    cycle occupy the first n edge indices, wheel spokes the next n with the
    center as the last node); the K5-e edge order follows the 1..9 labels
    of its standard drawing, with the two nonadjacent nodes labeled 0, 1.
    """
    kind, n = tag.kind, tag.n
    if kind == "cycle":
        if n is None or n < 3:
            raise InvalidParameter("cycle needs n >= 3")
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if kind == "wheel":
        if n is None or n < 3:
            raise InvalidParameter("wheel needs n >= 3")
        rim = [(i, (i + 1) % n) for i in range(n)]
        spokes = [(i, n) for i in range(n)]
        return build_graph(n + 1, rim + spokes)
    if kind == "wagner":
        if n is None or n < 6 or n % 2:
            raise InvalidParameter("wagner needs even n >= 6")
        outer = [(i, (i + 1) % n) for i in range(n)]
        diam = [(i, i + n // 2) for i in range(n // 2)]
        return build_graph(n, outer + diam)
    if kind == "prism":
        return build_graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                               (0, 3), (1, 4), (2, 5)])
    if kind == "k3":
        return build_graph(3, [(0, 1), (1, 2), (0, 2)])
    if kind == "k33":
        # circulant C6(1,3) labeling: outer 6-cycle first, then diameters
        return build_graph(6, [(i, (i + 1) % 6) for i in range(6)]
                           + [(0, 3), (1, 4), (2, 5)])
    if kind == "k5_minus_e":
        # nodes 0,1 nonadjacent; edge order = labels 1..9 of the drawing
        return build_graph(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4),
                               (2, 3), (2, 4), (3, 4)])
    raise InvalidParameter(f"cannot generate family {tag}")


# ---------------------------------------------------------------------------
# Figure fixtures (transcribed once, labeling documented here)

# Fig2G: outer 6-cycle on nodes 0..5 (its edges are indices 0..5), four
# inner nodes 6..9 ("a","b","c","d" of the drawing).  Fig2GPlusE adds the
# edge between inner nodes 7 and 8 ("b","c").
_FIG2G_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5),
                (1, 7), (6, 7), (3, 6),
                (0, 9), (8, 9), (4, 8),
                (6, 9), (2, 6), (2, 7), (5, 8), (5, 9)]

# Fig3Square: outer square v1..v4 = nodes 0..3, inner square v5..v8 =
# nodes 4..7, connectors v1v5 = (0,4) and v3v7 = (2,6).
_FIG3_EDGES = [(0, 1), (1, 2), (2, 3), (0, 3),
               (4, 5), (5, 6), (6, 7), (4, 7),
               (0, 4), (2, 6)]

FIG2G_OUTER_CYCLE = (0, 1, 2, 3, 4, 5)
FIG3_SQUARE_CYCLE = (0, 1, 2, 3)
FIG3_LONG_CYCLE = (0, 1, 2, 6, 5, 4)


def fixture(name: str) -> Graph:
    """The graphs of the two figure examples ('fig2g', 'fig2g+e', 'fig3')."""
    if name == "fig2g":
        return build_graph(10, _FIG2G_EDGES)
    if name == "fig2g+e":
        return build_graph(10, _FIG2G_EDGES + [(7, 8)])
    if name == "fig3":
        return build_graph(8, _FIG3_EDGES)
    raise InvalidParameter(f"unknown fixture {name!r}")


# ---------------------------------------------------------------------------
# Cycle enumeration


def cycle_edges(g: Graph, cycle: tuple[int, ...]) -> list[int]:
    """Edge indices of a node cycle; validates that the cycle exists in g."""
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        raise InvalidParameter(f"not a cycle: {cycle}")
    out = []
    for i in range(k):
        u, v = cycle[i], cycle[(i + 1) % k]
        if not g.has_edge(u, v):
            raise InvalidParameter(f"missing cycle edge ({u},{v})")
        out.append(g.edge_id(u, v))
    return out


def _canonical_cycle(cyc: list[int]) -> tuple[int, ...]:
    # rotate so the minimum node leads, reflect so the second node is minimal
    i = cyc.index(min(cyc))
    rot = cyc[i:] + cyc[:i]
    rev = [rot[0]] + rot[1:][::-1]
    return tuple(rot) if rot[1] <= rev[1] else tuple(rev)


def enumerate_cycles(g: Graph, max_len: Optional[int] = None,
                     induced_only: bool = False,
                     node_cap: int = 16) -> list[tuple[int, ...]]:
    """All cycles (optionally only chordless ones), one per rotation class.

    Each cycle starts at its minimum node; reflection duplicates removed.
    """
    if g.node_count > node_cap and max_len is None:
        raise SizeCapExceeded(
            f"{g.node_count} nodes > cap {node_cap}; pass max_len")
    limit = max_len if max_len is not None else g.node_count
    out: set[tuple[int, ...]] = set()
    adjset = [set(a) for a in g.adjacency]

    def chordless(path: list[int]) -> bool:
        k = len(path)
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue  # the closing cycle edge
                if path[j] in adjset[path[i]]:
                    return False
        return True

    for s in range(g.node_count):
        # paths starting at s using only nodes > s internally
        stack: list[list[int]] = [[s]]
        while stack:
            path = stack.pop()
            v = path[-1]
            for w in g.adjacency[v]:
                if w == s and len(path) >= 3:
                    if induced_only and not chordless(path):
                        continue
                    out.add(_canonical_cycle(path))
                elif w > s and w not in path and len(path) < limit:
                    if induced_only:
                        # a new node may touch earlier path nodes only at
                        # its predecessor or (closing later) the start
                        if any(w in adjset[x] for x in path[1:-1]):
                            continue
                    stack.append(path + [w])
    return sorted(out)


def induced_cycles(g: Graph, max_len: Optional[int] = None) -> list[tuple[int, ...]]:
    """Every chordless cycle of g up to max_len (desk scale)."""
    return enumerate_cycles(g, max_len=max_len, induced_only=True)


# ---------------------------------------------------------------------------
# Recognition of the 3-connected (K5-e)-minor-free building blocks


def _wheel_witness(g: Graph) -> Optional[tuple[FamilyTag, dict[int, int]]]:
    n = g.node_count - 1
    if n < 3 or g.edge_count != 2 * n:
        return None
    centers = [v for v in range(g.node_count) if g.degree(v) == n]
    if n == 3:
        if any(g.degree(v) != 3 for v in range(4)):
            return None
        centers = [0]
    for c in centers:
        rest = [v for v in range(g.node_count) if v != c]
        if any(g.degree(v) != 3 for v in rest) and n > 3:
            break
        # rim must be a single cycle through all non-center nodes
        rim_adj = {v: [w for w in g.adjacency[v] if w != c] for v in rest}
        if any(len(a) != 2 for a in rim_adj.values()):
            continue
        start = min(rest)
        order = [start, min(rim_adj[start])]
        while len(order) < n:
            v = order[-1]
            nxt = [w for w in rim_adj[v] if w != order[-2]]
            if not nxt:
                break
            order.append(nxt[0])
        if len(order) != n or order[0] not in rim_adj[order[-1]]:
            continue
        mapping = {v: i for i, v in enumerate(order)}
        mapping[c] = n
        return Wheel(n), mapping
    return None


def _k33_witness(g: Graph) -> Optional[tuple[FamilyTag, dict[int, int]]]:
    if g.node_count != 6 or g.edge_count != 9:
        return None
    if any(g.degree(v) != 3 for v in range(6)):
        return None
    side_a = sorted({0} | {w for v in g.adjacency[0] for w in g.adjacency[v]})
    side_b = sorted(g.adjacency[0])
    if len(side_a) != 3 or len(side_b) != 3:
        return None
    for v in side_a:
        if sorted(g.adjacency[v]) != side_b:
            return None
    mapping = {}
    for i, v in enumerate(side_a):
        mapping[v] = 2 * i  # template color class {0, 2, 4}
    for i, v in enumerate(side_b):
        mapping[v] = 2 * i + 1
    return K33, mapping


def _prism_witness(g: Graph) -> Optional[tuple[FamilyTag, dict[int, int]]]:
    if g.node_count != 6 or g.edge_count != 9:
        return None
    if any(g.degree(v) != 3 for v in range(6)):
        return None
    tris = [c for c in induced_cycles(g, max_len=3) if len(c) == 3]
    if len(tris) != 2 or set(tris[0]) & set(tris[1]):
        return None
    t1, t2 = tris
    partner = {}
    for v in t1:
        mates = [w for w in g.adjacency[v] if w in t2]
        if len(mates) != 1:
            return None
        partner[v] = mates[0]
    mapping = {}
    for i, v in enumerate(t1):
        mapping[v] = i
        mapping[partner[v]] = i + 3
    tmpl = generate(PRISM)
    inv = sorted(((mapping[u], mapping[v]) if mapping[u] < mapping[v]
                  else (mapping[v], mapping[u])) for u, v in g.edges)
    if inv != sorted(tmpl.edges):
        return None
    return PRISM, mapping


def _wagner_witness(g: Graph) -> Optional[tuple[FamilyTag, dict[int, int]]]:
    n = g.node_count
    if n < 6 or n % 2 or g.edge_count != 3 * n // 2:
        return None
    if any(g.degree(v) != 3 for v in range(n)):
        return None
    # search a Hamiltonian cycle whose chords are exactly the diameters
    half = n // 2

    def extend(order: list[int], used: set[int]) -> Optional[list[int]]:
        if len(order) == n:
            if not g.has_edge(order[-1], order[0]):
                return None
            for i in range(half):
                if not g.has_edge(order[i], order[i + half]):
                    return None
            return order
        for w in g.adjacency[order[-1]]:
            if w in used:
                continue
            # prune: once positions i and i+half are fixed they must be
            # adjacent in g
            k = len(order)
            if k >= half and not g.has_edge(order[k - half], w):
                continue
            res = extend(order + [w], used | {w})
            if res is not None:
                return res
        return None

    order = extend([0], {0})
    if order is None:
        return None
    return Wagner(n), {v: i for i, v in enumerate(order)}


def _k5e_witness(g: Graph) -> Optional[tuple[FamilyTag, dict[int, int]]]:
    if g.node_count != 5 or g.edge_count != 9:
        return None
    lows = [v for v in range(5) if g.degree(v) == 3]
    if len(lows) != 2 or g.has_edge(lows[0], lows[1]):
        return None
    highs = [v for v in range(5) if v not in lows]
    mapping = {lows[0]: 0, lows[1]: 1}
    for i, v in enumerate(highs):
        mapping[v] = i + 2
    return K5_MINUS_E, mapping


def classify_3connected_k5e(
        g: Graph, check: bool = True) -> tuple[FamilyTag, Optional[dict[int, int]]]:
    """Match g against the 3-connected (K5-e)-minor-free building blocks.

    Returns (tag, witness) where witness maps g's nodes onto the generator
    labeling, or (OTHER, None). Precondition: g is K3 or 3-connected
    (verified unless check=False).
    """
    if g.node_count == 3 and g.edge_count == 3:
        return K3, {v: v for v in range(3)}
    if check and not is_k_connected(g, 3):
        raise NotThreeConnected("input is neither K3 nor 3-connected")
    for rec in (_k33_witness, _wheel_witness, _prism_witness):
        res = rec(g)
        if res is not None:
            return res
    return OTHER, None


def classify_family(g: Graph) -> tuple[FamilyTag, Optional[dict[int, int]]]:
    """Recognize any generator family (used for round-trip checks).

    V6 is isomorphic to K3,3 and reports as K33.
    """
    if g.node_count == 3 and g.edge_count == 3:
        return K3, {v: v for v in range(3)}
    if (g.node_count >= 4 and g.edge_count == g.node_count
            and all(g.degree(v) == 2 for v in range(g.node_count))
            and is_connected(g)):
        cyc = enumerate_cycles(g)[0]
        return Cycle(g.node_count), {v: i for i, v in enumerate(cyc)}
    for rec in (_k33_witness, _wheel_witness, _prism_witness,
                _wagner_witness, _k5e_witness):
        res = rec(g)
        if res is not None:
            return res
    return OTHER, None
