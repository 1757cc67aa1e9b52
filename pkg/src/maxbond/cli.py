"""Command-line entry point.

Subcommands: solve, spqr, oracle, cycle, polytope, gen, suite. Graph input
is the weighted edge-list text format; inequalities are JSON files or
inline family specs (see _parse_ineq_spec). All output is deterministic:
JSON documents for scalar results, JSON lines for streams, and a plain
table with --format table.

Exit codes: 0 success, 1 usage or parse errors, 2 infeasible / overflow /
size-cap / classification failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .errors import MaxBondError
from .fileio import (
    format_graph,
    format_inequality,
    parse_graph,
    parse_inequality,
)
from .graphs import (
    FamilyTag,
    Graph,
    K33,
    K3,
    K5_MINUS_E,
    PRISM,
    Cycle,
    Wagner,
    Wheel,
    classify_family,
    cycle_edges,
    fixture,
    generate,
)
from .oracle import (
    enumerate_bonds,
    is_interleaved,
    max_bond_oracle,
    max_cycle_intersection,
)
from .polytope import (
    LinearInequality,
    check_inequality,
    cn_description,
    contract_path_to_edge,
    cycle_homog,
    cycle_sum,
    edge_nonneg,
    edge_upper,
    facet_enumeration,
    gen_cycle_sum,
    lift_node_split,
    lift_subdivide,
    lift_triangle,
    minor_free_description,
    switch,
    verify_description,
    wheel_description,
)
from .solver import max_bond
from .spqr import spr_tree, validate

FORMAT_VERSION = 1

_USAGE_ERROR = 1
_DOMAIN_ERROR = 2


@dataclass
class RunConfig:
    node_cap: int = 24
    edge_cap: int = 12
    fmt: str = "json"

    def __post_init__(self):
        if self.node_cap <= 0 or self.edge_cap <= 0:
            raise ValueError("caps must be positive")


class _CliError(Exception):
    def __init__(self, message: str, code: int = _USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _load_graph(path: str):
    try:
        with open(path) as f:
            return parse_graph(f.read())
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}") from exc
    except MaxBondError as exc:
        raise _CliError(f"bad graph file {path}: {exc}") from exc


def _emit(doc: dict, fmt: str):
    if fmt == "table":
        for key, val in doc.items():
            print(f"{key}: {json.dumps(val, sort_keys=True)}")
    else:
        print(json.dumps(doc, sort_keys=True))


def _parse_cycle(g: Graph, spec: str) -> tuple[int, ...]:
    if spec == "outer":
        return _outer_cycle(g)
    try:
        nodes = tuple(int(x) for x in spec.split(","))
    except ValueError as exc:
        raise _CliError(f"bad cycle spec {spec!r}") from exc
    cycle_edges(g, nodes)  # validates
    return nodes


def _outer_cycle(g: Graph) -> tuple[int, ...]:
    """Largest ring 0,1,...,c-1 fully present in the graph; the generated
    families all carry their outer/rim cycle on the lowest node ids."""
    best = None
    for c in range(3, g.node_count + 1):
        if all(g.has_edge(i, (i + 1) % c) for i in range(c)):
            best = tuple(range(c))
    if best is None:
        raise _CliError("graph has no standard outer cycle; pass node list")
    return best


def _parse_edge(g: Graph, spec: str) -> int:
    try:
        a, b = spec.split("-")
        u, v = int(a), int(b)
    except ValueError as exc:
        raise _CliError(f"bad edge spec {spec!r}") from exc
    if not g.has_edge(u, v):
        raise _CliError(f"no edge {spec!r} in graph")
    return g.edge_id(u, v)


def _parse_ineq_spec(g: Graph, spec: str) -> LinearInequality:
    """Inline inequality specs.

    @FILE               JSON inequality file
    cycle-sum:CYC       sum over E(C) <= 2
    gen-cycle-sum:CYC:K sum over E(C) <= 2K
    cycle-homog:CYC:U-V x_e - sum over E(C)-e <= 0
    edge-upper:U-V      x_e <= 1
    edge-nonneg:U-V     -x_e <= 0
    CYC is `outer` or a comma list of nodes.
    """
    if spec.startswith("@"):
        try:
            with open(spec[1:]) as f:
                return parse_inequality(f.read(), g)
        except OSError as exc:
            raise _CliError(f"cannot read {spec[1:]}: {exc}") from exc
        except MaxBondError as exc:
            raise _CliError(str(exc)) from exc
    parts = spec.split(":")
    try:
        if parts[0] == "cycle-sum" and len(parts) == 2:
            return cycle_sum(g, _parse_cycle(g, parts[1]))
        if parts[0] == "gen-cycle-sum" and len(parts) == 3:
            return gen_cycle_sum(g, _parse_cycle(g, parts[1]), int(parts[2]))
        if parts[0] == "cycle-homog" and len(parts) == 3:
            return cycle_homog(g, _parse_cycle(g, parts[1]),
                               _parse_edge(g, parts[2]))
        if parts[0] == "edge-upper" and len(parts) == 2:
            return edge_upper(g, _parse_edge(g, parts[1]))
        if parts[0] == "edge-nonneg" and len(parts) == 2:
            return edge_nonneg(g, _parse_edge(g, parts[1]))
    except MaxBondError as exc:
        raise _CliError(str(exc)) from exc
    raise _CliError(f"unknown inequality spec {spec!r}")


def _ineq_doc(g: Graph, ineq: LinearInequality) -> dict:
    return json.loads(format_inequality(ineq, g))


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args) -> int:
    g, w = _load_graph(args.path)
    res = max_bond(g, w, mode=args.mode, node_cap=args.node_cap,
                   seed=args.seed)
    stats = {"S": 0, "P": 0, "R": 0}
    if args.mode != "oracle":
        from .spqr import blocks
        for blk, _, _ in blocks(g):
            if blk.edge_count > 1:
                for sk in spr_tree(blk, seed=args.seed).skeletons:
                    stats[sk.kind] += 1
    _emit({"value": res.value, "side": res.bond.sorted_side(),
           "edges": res.bond.sorted_edges(), "mode": args.mode,
           "skeleton_stats": stats}, args.format)
    return 0


def cmd_spqr(args) -> int:
    g, _ = _load_graph(args.path)
    t = spr_tree(g, seed=args.seed)
    rep = validate(t, g)
    doc = {
        "skeletons": [
            {"kind": sk.kind,
             "edges": [[e.u, e.v, e.real, e.link] for e in sk.edges]}
            for sk in t.skeletons
        ],
        "tree_edges": [list(te) for te in t.tree_edges],
        "valid": rep.ok,
    }
    _emit(doc, args.format)
    return 0


def cmd_oracle(args) -> int:
    g, w = _load_graph(args.path)
    if args.what == "bonds":
        for b in enumerate_bonds(g, node_cap=args.node_cap):
            print(json.dumps({"side": b.sorted_side(),
                              "edges": b.sorted_edges(),
                              "weight": sum(w[e] for e in b.edge_set)},
                             sort_keys=True))
        return 0
    if args.what == "max":
        res = max_bond_oracle(g, w, node_cap=args.node_cap)
        _emit({"value": res.value, "side": res.bond.sorted_side(),
               "edges": res.bond.sorted_edges()}, args.format)
        return 0
    if args.what == "cycle-intersect":
        if not args.cycle:
            raise _CliError("cycle-intersect needs --cycle")
        cyc = _parse_cycle(g, args.cycle)
        _emit({"cycle": list(cyc),
               "max_intersection": max_cycle_intersection(
                   g, cyc, node_cap=args.node_cap)}, args.format)
        return 0
    raise _CliError(f"unknown oracle action {args.what!r}")


def cmd_cycle(args) -> int:
    g, _ = _load_graph(args.path)
    if args.what == "classify":
        if not args.cycle:
            raise _CliError("classify needs --cycle")
        cyc = _parse_cycle(g, args.cycle)
        rep = is_interleaved(g, cyc, method=args.method,
                             node_cap=args.node_cap)
        doc = {"cycle": list(cyc), "interleaved": rep.interleaved}
        if rep.quadruple:
            doc["quadruple"] = list(rep.quadruple)
        if rep.paths:
            doc["paths"] = [list(p) for p in rep.paths]
        if rep.violating_bond:
            doc["violating_bond"] = {
                "side": rep.violating_bond.sorted_side(),
                "edges": rep.violating_bond.sorted_edges()}
        _emit(doc, args.format)
        return 0
    if args.what == "family":
        tag, _ = classify_family(g)
        _emit({"family": str(tag)}, args.format)
        return 0
    raise _CliError(f"unknown cycle action {args.what!r}")


def _description_for(g: Graph, name: str) -> list[LinearInequality]:
    if name == "cn":
        tag, _ = classify_family(g)
        if tag.kind != "cycle":
            raise _CliError("cn description needs a cycle graph")
        return cn_description(tag.n)
    if name == "wheel":
        tag, _ = classify_family(g)
        if tag.kind != "wheel":
            raise _CliError("wheel description needs a wheel graph")
        return wheel_description(tag.n)
    if name == "minor-free":
        return minor_free_description(g)
    raise _CliError(f"unknown description {name!r}")


def cmd_polytope(args) -> int:
    g, _ = _load_graph(args.path)
    if args.what == "facets":
        for ineq in facet_enumeration(g, edge_cap=args.edge_cap):
            print(json.dumps(_ineq_doc(g, ineq), sort_keys=True))
        return 0
    if args.what == "check":
        ineq = _parse_ineq_spec(g, args.ineq)
        rep = check_inequality(g, ineq, node_cap=args.node_cap)
        doc = {"inequality": _ineq_doc(g, ineq), "valid": rep.valid,
               "tight": rep.tight, "face_dim": rep.face_dim,
               "facet": rep.facet_defining,
               "tight_bonds": rep.tight_bond_count}
        if rep.violating_bond is not None:
            doc["violating_bond"] = {
                "side": rep.violating_bond.sorted_side(),
                "edges": rep.violating_bond.sorted_edges()}
        _emit(doc, args.format)
        return 0
    if args.what == "verify-description":
        cand = _description_for(g, args.description)
        equal, missing, extra = verify_description(g, cand,
                                                   edge_cap=args.edge_cap)
        _emit({"equal": equal,
               "missing": [_ineq_doc(g, i) for i in missing],
               "extra": [_ineq_doc(g, i) for i in extra]}, args.format)
        return 0
    if args.what == "switch":
        ineq = _parse_ineq_spec(g, args.ineq)
        if not args.nodes:
            raise _CliError("switch needs --nodes")
        nodes = [int(x) for x in args.nodes.split(",")]
        _emit({"inequality": _ineq_doc(g, switch(g, ineq, nodes))},
              args.format)
        return 0
    if args.what == "lift":
        return _cmd_lift(args, g)
    raise _CliError(f"unknown polytope action {args.what!r}")


def _cmd_lift(args, g: Graph) -> int:
    ineq = _parse_ineq_spec(g, args.ineq)
    op = args.op

    def edge_group(spec: str) -> set[int]:
        if not spec:
            return set()
        return {_parse_edge(g, part) for part in spec.split(",")}

    if op == "subdivide":
        if not args.edge:
            raise _CliError("subdivide needs --edge")
        res = lift_subdivide(g, ineq, _parse_edge(g, args.edge),
                             k=args.parts, node_cap=args.node_cap)
    elif op == "node-split":
        if args.node is None or not args.group:
            raise _CliError("node-split needs --node and --group")
        moved = edge_group(args.group)
        rest = set(g.incident_edges(args.node)) - moved
        res = lift_node_split(g, ineq, args.node, (rest, moved),
                              node_cap=args.node_cap)
    elif op == "triangle":
        if args.node is None:
            raise _CliError("triangle needs --node")
        g2 = edge_group(args.group2)
        g3 = edge_group(args.group3)
        g1 = set(g.incident_edges(args.node)) - g2 - g3
        res = lift_triangle(g, ineq, args.node, (g1, g2, g3),
                            node_cap=args.node_cap)
    elif op == "contract-path":
        if not args.path_nodes:
            raise _CliError("contract-path needs --path")
        path = [int(x) for x in args.path_nodes.split(",")]
        res = contract_path_to_edge(g, ineq, path, node_cap=args.node_cap)
    else:
        raise _CliError(f"unknown lift operation {op!r}")
    _emit({"graph": format_graph(res.graph).rstrip("\n").split("\n"),
           "inequality": _ineq_doc(res.graph, res.inequality),
           "verified": res.verified}, args.format)
    return 0


_GEN_FAMILIES = ("cycle", "wheel", "wagner", "prism", "k3", "k33", "k5e",
                 "fig2g", "fig2g+e", "fig3")


def _gen_graph(family: str, n: Optional[int]) -> Graph:
    needs_n = family in ("cycle", "wheel", "wagner")
    if needs_n and n is None:
        raise _CliError(f"family {family!r} needs a size argument")
    if family == "cycle":
        return generate(Cycle(n))
    if family == "wheel":
        return generate(Wheel(n))
    if family == "wagner":
        return generate(Wagner(n))
    if family == "prism":
        return generate(PRISM)
    if family == "k3":
        return generate(K3)
    if family == "k33":
        return generate(K33)
    if family == "k5e":
        return generate(K5_MINUS_E)
    if family in ("fig2g", "fig2g+e", "fig3"):
        return fixture(family)
    raise _CliError(f"unknown family {family!r}; choose from "
                    + ", ".join(_GEN_FAMILIES))


def cmd_gen(args) -> int:
    if args.family == "all":
        import os
        outdir = args.output or "."
        os.makedirs(outdir, exist_ok=True)
        specs = [("cycle", n) for n in range(3, 9)] \
            + [("wheel", n) for n in range(3, 8)] \
            + [("wagner", n) for n in (6, 8)] \
            + [(f, None) for f in _GEN_FAMILIES if f not in
               ("cycle", "wheel", "wagner")]
        written = []
        for family, n in specs:
            g = _gen_graph(family, n)
            name = family if n is None else f"{family}{n}"
            name = name.replace("+", "_plus_")
            path = os.path.join(outdir, f"{name}.graph")
            with open(path, "w") as f:
                f.write(format_graph(g))
            written.append(path)
        _emit({"written": written}, args.format)
        return 0
    g = _gen_graph(args.family, args.n)
    text = format_graph(g)
    if args.output:
        with open(args.output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_suite(args) -> int:
    from .acceptance import run_suite
    results = run_suite(name_filter=args.filter)
    ok = True
    for r in results:
        status = "pass" if r.passed else "FAIL"
        print(f"[{status}] {r.name} ({r.elapsed:.2f}s) {r.detail}")
        ok = ok and r.passed
    if not results:
        print("no checks matched the filter")
        return _USAGE_ERROR
    return 0 if ok else _DOMAIN_ERROR


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="maxbond")
    p.add_argument("--version", action="version",
                   version=f"maxbond {__version__} (format {FORMAT_VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("json", "table"),
                        default="json")
        sp.add_argument("--node-cap", type=int, default=24)
        sp.add_argument("--edge-cap", type=int, default=12)
        sp.add_argument("--seed", type=int, default=0)

    ps = sub.add_parser("solve", help="maximum bond of a weighted graph")
    ps.add_argument("path")
    ps.add_argument("--mode", choices=("auto", "oracle", "k5e"),
                    default="auto")
    common(ps)
    ps.set_defaults(func=cmd_solve)

    pq = sub.add_parser("spqr", help="SPR-tree decomposition")
    pq.add_argument("path")
    common(pq)
    pq.set_defaults(func=cmd_spqr)

    po = sub.add_parser("oracle", help="brute-force bond enumeration")
    po.add_argument("path")
    po.add_argument("what", choices=("bonds", "max", "cycle-intersect"))
    po.add_argument("--cycle")
    common(po)
    po.set_defaults(func=cmd_oracle)

    pc = sub.add_parser("cycle", help="cycle classification")
    pc.add_argument("path")
    pc.add_argument("what", choices=("classify", "family"))
    pc.add_argument("--cycle")
    pc.add_argument("--method", choices=("bonds", "paths"), default="bonds")
    common(pc)
    pc.set_defaults(func=cmd_cycle)

    pp = sub.add_parser("polytope", help="bond polytope computations")
    pp.add_argument("path")
    pp.add_argument("what", choices=("check", "facets",
                                     "verify-description", "lift", "switch"))
    pp.add_argument("op", nargs="?",
                    help="lift operation: node-split | triangle | "
                         "subdivide | contract-path")
    pp.add_argument("--ineq", help="inequality spec or @file")
    pp.add_argument("--description",
                    choices=("cn", "wheel", "minor-free"),
                    default="minor-free")
    pp.add_argument("--nodes", help="switch set, comma list")
    pp.add_argument("--edge", help="edge u-v for subdivide")
    pp.add_argument("--parts", type=int, default=2)
    pp.add_argument("--node", type=int, help="node for node-split/triangle")
    pp.add_argument("--group", help="edges moved to the split node")
    pp.add_argument("--group2", default="", help="triangle group 2 edges")
    pp.add_argument("--group3", default="", help="triangle group 3 edges")
    pp.add_argument("--path", dest="path_nodes",
                    help="path node list for contract-path")
    common(pp)
    pp.set_defaults(func=cmd_polytope)

    pg = sub.add_parser("gen", help="write family graphs")
    pg.add_argument("family", help="family name, or 'all'")
    pg.add_argument("n", nargs="?", type=int)
    pg.add_argument("-o", "--output")
    common(pg)
    pg.set_defaults(func=cmd_gen)

    pr = sub.add_parser("suite", help="run the full reproduction suite")
    pr.add_argument("--filter", help="substring filter on check names")
    common(pr)
    pr.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except MaxBondError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return _DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
