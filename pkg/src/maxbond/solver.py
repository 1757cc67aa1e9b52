"""MaxBond solvers: the block + SPR-tree reduction pipeline with
specialized skeleton solvers, and the direct wheel solver that replaces the
generic width-3 tree-decomposition dynamic program.

Skeleton edges are addressed by keys ('r', original edge id) or
('v', twin link id) so that promoted virtual edges can carry weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import (
    Infeasible,
    InvalidParameter,
    NotK5eMinorFree,
    SizeCapExceeded,
)
from .graphs import (
    Graph,
    build_graph,
    check_weights,
    classify_3connected_k5e,
    connected_components,
)
from .oracle import BondCut, Constraint, SolveResult, max_bond_oracle
from .spqr import Skeleton, SprTree, blocks, spr_tree

EdgeKey = tuple[str, int]  # ('r', edge id) or ('v', link id)


@dataclass(frozen=True)
class SkeletonSolution:
    value: int
    side: frozenset[int]      # skeleton nodes on the cut side
    cut: frozenset[EdgeKey]   # skeleton edges crossed


@dataclass(frozen=True)
class PruneRecord:
    skeleton: int
    omega_plus: int
    omega_minus: int


def _edge_key(e) -> EdgeKey:
    return ("r", e.real) if e.real is not None else ("v", e.link)


def _cut_of_side(sk: Skeleton, side: frozenset[int]) -> frozenset[EdgeKey]:
    return frozenset(_edge_key(e) for e in sk.edges
                     if (e.u in side) != (e.v in side))


# ---------------------------------------------------------------------------
# Per-kind skeleton solvers


def solve_skeleton_S(sk: Skeleton, weights: dict[EdgeKey, int],
                     forced_in: frozenset[EdgeKey] = frozenset(),
                     forced_out: frozenset[EdgeKey] = frozenset()
                     ) -> SkeletonSolution:
    """A bond of a cycle is empty or exactly two edges."""
    adj: dict[int, list[tuple[int, EdgeKey]]] = {}
    for e in sk.edges:
        adj.setdefault(e.u, []).append((e.v, _edge_key(e)))
        adj.setdefault(e.v, []).append((e.u, _edge_key(e)))
    start = min(adj)
    order_nodes = [start]
    order_keys: list[EdgeKey] = []
    prev_key = None
    while True:
        v = order_nodes[-1]
        nxt = [(w, k) for w, k in adj[v] if k != prev_key]
        w, k = nxt[0]
        order_keys.append(k)
        prev_key = k
        if w == start:
            break
        order_nodes.append(w)
    L = len(order_keys)
    forced = [t for t, k in enumerate(order_keys) if k in forced_in]
    if len(forced) > 2:
        raise Infeasible("cycle bond cannot contain 3 forced edges")
    allowed = [t for t, k in enumerate(order_keys)
               if k not in forced_in and k not in forced_out]

    def pair_solution(p: int, q: int) -> SkeletonSolution:
        val = weights[order_keys[p]] + weights[order_keys[q]]
        side = frozenset(order_nodes[(p + 1 + t) % L] for t in range(q - p))
        return SkeletonSolution(val, side, frozenset(
            {order_keys[p], order_keys[q]}))

    if len(forced) == 2:
        return pair_solution(forced[0], forced[1])
    if len(forced) == 1:
        if not allowed:
            raise Infeasible("no second cycle edge available")
        best = max(allowed, key=lambda t: weights[order_keys[t]])
        p, q = sorted((forced[0], best))
        return pair_solution(p, q)
    empty = SkeletonSolution(0, frozenset(), frozenset())
    if len(allowed) < 2:
        return empty
    ranked = sorted(allowed, key=lambda t: -weights[order_keys[t]])
    p, q = sorted(ranked[:2])
    cand = pair_solution(p, q)
    return cand if cand.value > 0 else empty


def solve_skeleton_P(sk: Skeleton, weights: dict[EdgeKey, int],
                     forced_in: frozenset[EdgeKey] = frozenset(),
                     forced_out: frozenset[EdgeKey] = frozenset()
                     ) -> SkeletonSolution:
    """A bond of an edge bundle is empty or the whole bundle."""
    keys = [_edge_key(e) for e in sk.edges]
    if forced_in and forced_out:
        raise Infeasible("bundle bond is all-or-nothing")
    u = min(sk.nodes())
    total = sum(weights[k] for k in keys)
    full = SkeletonSolution(total, frozenset({u}), frozenset(keys))
    if forced_in:
        return full
    empty = SkeletonSolution(0, frozenset(), frozenset())
    if forced_out or total <= 0:
        return empty
    return full


@lru_cache(maxsize=64)
def _r_context(sk: Skeleton):
    """Relabeled graph and shape classification of an R skeleton; cached
    because the pruning pass solves each skeleton twice in a row."""
    nodes = sk.nodes()
    remap = {x: i for i, x in enumerate(nodes)}
    keys = tuple(_edge_key(e) for e in sk.edges)
    pairs = tuple((remap[e.u], remap[e.v]) for e in sk.edges)
    g = build_graph(len(nodes), list(pairs))
    tag, wit = classify_3connected_k5e(g, check=False)
    return nodes, keys, pairs, g, tag, wit


def solve_skeleton_R(sk: Skeleton, weights: dict[EdgeKey, int],
                     forced_in: frozenset[EdgeKey] = frozenset(),
                     forced_out: frozenset[EdgeKey] = frozenset(),
                     mode: str = "auto", node_cap: int = 24
                     ) -> SkeletonSolution:
    """Dispatch on the shape of a 3-connected skeleton.

    Wheels get the direct arc solver; Prism and K3,3 (constant size) and,
    in auto mode, anything else up to node_cap go to the brute-force
    oracle. In k5e mode an unrecognized skeleton aborts the pipeline.
    """
    nodes, keys, pairs, g, tag, wit = _r_context(sk)
    if tag.kind == "wheel":
        n = tag.n
        inv = {}
        for x, t in wit.items():
            inv[t] = nodes[x]
        rim_w = [0] * n
        spoke_w = [0] * n
        rim_key: list[EdgeKey] = [None] * n  # type: ignore
        spoke_key: list[EdgeKey] = [None] * n  # type: ignore
        for (a, b), k in zip(pairs, keys):
            ta, tb = wit[a], wit[b]
            if ta == n or tb == n:
                i = tb if ta == n else ta
                spoke_w[i] = weights[k]
                spoke_key[i] = k
            else:
                i = ta if (ta + 1) % n == tb else tb
                rim_w[i] = weights[k]
                rim_key[i] = k
        pos = {k: ("rim", i) for i, k in enumerate(rim_key)}
        pos.update({k: ("spoke", i) for i, k in enumerate(spoke_key)})
        fi = frozenset(pos[k] for k in forced_in)
        fo = frozenset(pos[k] for k in forced_out)
        val, tmpl_side = wheel_max_bond(n, rim_w, spoke_w, fi, fo)
        side = frozenset(inv[t] for t in tmpl_side)
        return SkeletonSolution(val, side, _cut_of_side(sk, side))
    if tag.kind == "other":
        if mode == "k5e":
            raise NotK5eMinorFree(
                "3-connected skeleton is not a wheel, Prism, K3 or K3,3",
                skeleton=sk)
        if len(nodes) > node_cap:
            raise SizeCapExceeded(
                f"R skeleton with {len(nodes)} nodes exceeds cap {node_cap}")
    key_index = {k: i for i, k in enumerate(keys)}
    cons = Constraint(frozenset(key_index[k] for k in forced_in),
                      frozenset(key_index[k] for k in forced_out))
    res = max_bond_oracle(g, [weights[k] for k in keys], cons,
                          node_cap=node_cap)
    side = frozenset(nodes[x] for x in res.bond.side)
    return SkeletonSolution(res.value, side, _cut_of_side(sk, side))


def solve_skeleton(sk: Skeleton, weights: dict[EdgeKey, int],
                   forced_in: frozenset[EdgeKey] = frozenset(),
                   forced_out: frozenset[EdgeKey] = frozenset(),
                   mode: str = "auto", node_cap: int = 24
                   ) -> SkeletonSolution:
    if sk.kind == "S":
        return solve_skeleton_S(sk, weights, forced_in, forced_out)
    if sk.kind == "P":
        return solve_skeleton_P(sk, weights, forced_in, forced_out)
    return solve_skeleton_R(sk, weights, forced_in, forced_out, mode,
                            node_cap)


# ---------------------------------------------------------------------------
# Wheel solver


def wheel_max_bond(n: int, rim: list[int], spokes: list[int],
                   forced_in: frozenset = frozenset(),
                   forced_out: frozenset = frozenset()
                   ) -> tuple[int, frozenset[int]]:
    """Maximum bond of the wheel with n rim nodes.

    Rim edge i joins rim nodes i and i+1 (mod n); spoke i joins rim node i
    to the center (template node n). Constraints are sets of
    ('rim', i) / ('spoke', i) labels. Returns (value, side) where side is a
    set of template nodes: empty, {n} for the center cut, or a rim arc.

    The bonds of a wheel are the empty set, the full spoke star, and the
    cuts of contiguous rim arcs; the unconstrained case is a linear
    prefix-sum sweep, the constrained case scans all arcs.
    """
    if len(rim) != n or len(spokes) != n or n < 3:
        raise InvalidParameter("bad wheel instance")
    best: Optional[tuple[int, frozenset[int]]] = None
    fin_rim = {i for t, i in forced_in if t == "rim"}
    fin_spk = {i for t, i in forced_in if t == "spoke"}
    fout_rim = {i for t, i in forced_out if t == "rim"}
    fout_spk = {i for t, i in forced_out if t == "spoke"}
    if not forced_in:
        best = (0, frozenset())
    if not fin_rim and not (fout_spk):
        cand = (sum(spokes), frozenset({n}))
        if best is None or cand[0] > best[0]:
            best = cand
    if not forced_in and not forced_out and n >= 4:
        val, i, j = _wheel_arc_sweep(rim, spokes)
        if val > best[0]:
            arc = frozenset((i + t) % n for t in range(j - i + 1))
            best = (val, arc)
        return best
    # constrained (or tiny) case: scan every arc
    for i in range(n):
        acc = 0
        for length in range(1, n):
            j = (i + length - 1) % n
            acc += spokes[j]
            cut_rims = {(i - 1) % n, j}
            if fin_rim - cut_rims or fout_rim & cut_rims:
                continue
            if any((k - i) % n >= length for k in fin_spk):
                continue
            if any((k - i) % n < length for k in fout_spk):
                continue
            val = acc + sum(rim[r] for r in cut_rims)
            if best is None or val > best[0]:
                best = (val, frozenset((i + t) % n for t in range(length)))
    if best is None:
        raise Infeasible("no wheel bond satisfies the constraints")
    return best


def _wheel_arc_sweep(rim: list[int], spokes: list[int]) -> tuple[int, int, int]:
    """Best rim arc of an unconstrained wheel in O(n) via doubled arrays.

    Arc i..j (inclusive) has value rim[i-1] + rim[j] + sum(spokes[i..j]);
    splitting into A[j] = rim[j] + P[j+1] and B[i] = rim[i-1] - P[i] with
    spoke prefix sums P turns the search into a sliding-window maximum of B
    over windows of size n-1.
    """
    n = len(rim)
    r = np.array(rim + rim, dtype=np.int64)
    s = np.array(spokes + spokes, dtype=np.int64)
    P = np.zeros(2 * n + 1, dtype=np.int64)
    np.cumsum(s, out=P[1:])
    A = r + P[1:]
    B = np.roll(r, 1) - P[:-1]
    w = n - 1
    m = len(B)
    # block prefix/suffix maxima give trailing-window maxima in O(1) each
    pad = (-m) % w
    Bp = np.concatenate([B, np.full(pad, np.iinfo(np.int64).min)])
    blocks_ = Bp.reshape(-1, w)
    pre = np.maximum.accumulate(blocks_, axis=1).ravel()[:m]
    suf = np.maximum.accumulate(blocks_[:, ::-1], axis=1)[:, ::-1].ravel()[:m]
    idx = np.arange(m)
    lo = np.maximum(idx - w + 1, 0)
    win = np.where(lo == 0, pre[idx], np.maximum(suf[lo], pre[idx]))
    total = A + win
    j = int(np.argmax(total))
    lo_j = max(j - w + 1, 0)
    i = lo_j + int(np.argmax(B[lo_j:j + 1]))
    return int(total[j]), i, j


# ---------------------------------------------------------------------------
# Tree reduction


def reduce_and_solve(t: SprTree, g: Graph, weights: list[int],
                     mode: str = "auto", node_cap: int = 24) -> SolveResult:
    """Leaf pruning over a rooted SPR-tree of the 2-connected graph g.

    Each pruned skeleton reports the best bond of its subtree containing
    its parent virtual edge (promoted onto that edge as a weight) and the
    best not containing it (competing in a global maximum). The winning
    bond's side set is reconstructed through the tree and re-evaluated.
    """
    k = len(t.skeletons)
    parent_link = [None] * k
    tree_parent = [None] * k
    children: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for p, c, l in t.tree_edges:
        parent_link[c] = l
        tree_parent[c] = p
        children[p].append((c, l))
    link_attach: dict[int, tuple[int, int]] = {}
    wmaps: list[dict[EdgeKey, int]] = []
    for sk in t.skeletons:
        wm = {}
        for e in sk.edges:
            if e.real is not None:
                wm[("r", e.real)] = weights[e.real]
            else:
                wm[("v", e.link)] = 0
                link_attach[e.link] = (e.u, e.v)
        wmaps.append(wm)
    plus: list[Optional[SkeletonSolution]] = [None] * k
    minus: list[Optional[SkeletonSolution]] = [None] * k
    records: list[PruneRecord] = []
    for sid in range(k - 1, 0, -1):
        lk = ("v", parent_link[sid])
        sk = t.skeletons[sid]
        plus[sid] = solve_skeleton(sk, wmaps[sid], frozenset({lk}),
                                   frozenset(), mode, node_cap)
        minus[sid] = solve_skeleton(sk, wmaps[sid], frozenset(),
                                    frozenset({lk}), mode, node_cap)
        records.append(PruneRecord(sid, plus[sid].value, minus[sid].value))
        # promote: the parent sees the subtree's best through-value
        wmaps[tree_parent[sid]][lk] = plus[sid].value
    root_sol = solve_skeleton(t.skeletons[0], wmaps[0], frozenset(),
                              frozenset(), mode, node_cap)
    winner_sid, winner_mode, best_val = 0, "root", root_sol.value
    for sid in range(1, k):
        if minus[sid].value > best_val:
            winner_sid, winner_mode, best_val = sid, "minus", minus[sid].value
    # reconstruct the side set
    assign: dict[int, bool] = {}
    sol_of = {"root": lambda s: root_sol, "plus": lambda s: plus[s],
              "minus": lambda s: minus[s]}
    stack: list[tuple] = [("expand", winner_sid, winner_mode, False)]
    while stack:
        task = stack.pop()
        if task[0] == "expand":
            _, sid, md, flip = task
            sol = sol_of[md](sid)
            for x in t.skeletons[sid].nodes():
                assign[x] = (x in sol.side) != flip
            for c, l in children[sid]:
                u, _ = link_attach[l]
                if ("v", l) in sol.cut:
                    cflip = (u in plus[c].side) != assign[u]
                    stack.append(("expand", c, "plus", cflip))
                else:
                    stack.append(("bulk", c, assign[u]))
        else:
            _, sid, b = task
            for x in t.skeletons[sid].nodes():
                assign[x] = b
            for c, _ in children[sid]:
                stack.append(("bulk", c, b))
    if winner_sid != 0:
        u, _ = link_attach[parent_link[winner_sid]]
        fill = assign[u]
        for x in range(g.node_count):
            if x not in assign:
                assign[x] = fill
    side = frozenset(x for x, b in assign.items() if b)
    if 0 in side:
        side = frozenset(range(g.node_count)) - side
    cut = frozenset(i for i, (u, v) in enumerate(g.edges)
                    if (u in side) != (v in side))
    value = sum(weights[i] for i in cut)
    if value != best_val:
        raise InvalidParameter(
            f"reconstructed bond value {value} != optimum {best_val}")
    return SolveResult(best_val, BondCut(side, cut, True))


# ---------------------------------------------------------------------------
# Full pipeline


def _solve_block(g: Graph, weights: list[int], mode: str, node_cap: int,
                 seed: int) -> SolveResult:
    if g.edge_count == 1:
        if weights[0] > 0:
            u, v = g.edges[0]
            return SolveResult(weights[0],
                               BondCut(frozenset({max(u, v)}),
                                       frozenset({0}), True))
        return SolveResult(0, BondCut(frozenset(), frozenset(), True))
    t = spr_tree(g, seed=seed)
    return reduce_and_solve(t, g, weights, mode, node_cap)


def max_bond(g: Graph, weights: list[int], mode: str = "auto",
             node_cap: int = 24, seed: int = 0) -> SolveResult:
    """Exact maximum bond of g.

    Disconnected input is solved per component; the reported bond then
    lives inside the winning component. mode 'oracle' skips the
    decomposition, 'k5e' insists every 3-connected piece is a wheel,
    Prism, K3 or K3,3.
    """
    w = check_weights(g, weights)
    if g.edge_count == 0:
        return SolveResult(0, BondCut(frozenset(), frozenset(), True))
    best: Optional[SolveResult] = None
    for comp in connected_components(g):
        comp_set = set(comp)
        comp_edges = [i for i, (u, v) in enumerate(g.edges) if u in comp_set]
        if not comp_edges:
            continue
        remap = {x: i for i, x in enumerate(comp)}
        sub = build_graph(len(comp), [(remap[g.edges[i][0]],
                                       remap[g.edges[i][1]])
                                      for i in comp_edges])
        sub_w = [w[i] for i in comp_edges]
        if mode == "oracle":
            res = max_bond_oracle(sub, sub_w, node_cap=node_cap)
            side = res.bond.side
            cut = res.bond.edge_set
        else:
            value_best: Optional[tuple[int, frozenset[int]]] = None
            for blk, nmap, emap in blocks(sub):
                bw = [sub_w[i] for i in emap]
                r = _solve_block(blk, bw, mode, node_cap, seed)
                cut_sub = frozenset(emap[i] for i in r.bond.edge_set)
                if value_best is None or r.value > value_best[0]:
                    anchor = nmap[min(r.bond.side)] if r.bond.side else None
                    value_best = (r.value, cut_sub, anchor)
            val, cut, anchor = value_best
            if anchor is None:
                side = frozenset()
            else:
                side = frozenset(_component_side(sub, cut, anchor))
                if 0 in side:
                    side = frozenset(range(sub.node_count)) - side
            res = SolveResult(val, BondCut(side, cut, True))
        got = sum(sub_w[i] for i in cut)
        if got != res.value:
            raise InvalidParameter("bond re-evaluation mismatch")
        if best is None or res.value > best.value:
            back_n = {i: x for x, i in remap.items()}
            best = SolveResult(res.value, BondCut(
                frozenset(back_n[x] for x in side),
                frozenset(comp_edges[i] for i in cut), True))
    return best


def _component_side(g: Graph, cut: frozenset[int], anchor: int) -> set[int]:
    banned = cut
    seen = {anchor}
    stack = [anchor]
    while stack:
        v = stack.pop()
        for w in g.adjacency[v]:
            if g.edge_id(v, w) in banned or w in seen:
                continue
            seen.add(w)
            stack.append(w)
    return seen


def k5e_max_bond(g: Graph, weights: list[int], seed: int = 0) -> SolveResult:
    """max_bond restricted to graphs whose 3-connected pieces come from
    the wheel / Prism / K3 / K3,3 family; rejects anything else."""
    return max_bond(g, weights, mode="k5e", seed=seed)
