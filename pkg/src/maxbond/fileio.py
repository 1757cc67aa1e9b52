"""Text formats: weighted edge lists for graphs and JSON for inequalities.

Graph files: first non-comment line `n m`, then m lines `u v` or `u v w`
with integer weights; `#` starts a comment anywhere on a line. Unweighted
edges default to weight 1.

Inequality files: a JSON object {"coeffs": {"u-v": "p/q" | int, ...},
"rhs": "p/q" | int, "tag": optional}; edges not listed have coefficient 0.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, TextIO

from .errors import InvalidParameter
from .graphs import Graph, build_graph
from .polytope import LinearInequality


def parse_graph(text: str) -> tuple[Graph, list[int]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise InvalidParameter("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise InvalidParameter(f"bad header line {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise InvalidParameter(f"expected {m} edge lines, found {len(rows) - 1}")
    pairs = []
    weights = []
    for line in rows[1:]:
        parts = line.split()
        if len(parts) not in (2, 3):
            raise InvalidParameter(f"bad edge line {line!r}")
        u, v = int(parts[0]), int(parts[1])
        pairs.append((u, v))
        weights.append(int(parts[2]) if len(parts) == 3 else 1)
    g = build_graph(n, pairs)
    # build_graph sorts endpoints but keeps the input edge order
    return g, weights


def read_graph(f: TextIO) -> tuple[Graph, list[int]]:
    return parse_graph(f.read())


def format_graph(g: Graph, weights: Optional[list[int]] = None) -> str:
    lines = [f"{g.node_count} {g.edge_count}"]
    for i, (u, v) in enumerate(g.edges):
        if weights is None:
            lines.append(f"{u} {v}")
        else:
            lines.append(f"{u} {v} {weights[i]}")
    return "\n".join(lines) + "\n"


def write_graph(f: TextIO, g: Graph, weights: Optional[list[int]] = None):
    f.write(format_graph(g, weights))


def _parse_rational(x) -> Fraction:
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidParameter(f"bad rational {x!r}")


def parse_inequality(text: str, g: Graph) -> LinearInequality:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameter(f"bad inequality JSON: {exc}") from exc
    if not isinstance(doc, dict) or "coeffs" not in doc or "rhs" not in doc:
        raise InvalidParameter("inequality JSON needs 'coeffs' and 'rhs'")
    coeffs = [Fraction(0)] * g.edge_count
    for key, val in doc["coeffs"].items():
        try:
            a, b = key.split("-")
            u, v = int(a), int(b)
        except ValueError as exc:
            raise InvalidParameter(f"bad edge key {key!r}") from exc
        if not g.has_edge(u, v):
            raise InvalidParameter(f"no edge {key!r} in graph")
        coeffs[g.edge_id(u, v)] = _parse_rational(val)
    return LinearInequality.make(coeffs, _parse_rational(doc["rhs"]),
                                 tag=doc.get("tag", ""))


def read_inequality(f: TextIO, g: Graph) -> LinearInequality:
    return parse_inequality(f.read(), g)


def _fmt_int(x: int) -> str:
    return str(x)


def format_inequality(ineq: LinearInequality, g: Graph) -> str:
    coeffs = {}
    for i, c in enumerate(ineq.coeffs):
        if c != 0:
            u, v = g.edges[i]
            coeffs[f"{u}-{v}"] = _fmt_int(c)
    doc = {"coeffs": coeffs, "rhs": _fmt_int(ineq.rhs)}
    if ineq.tag:
        doc["tag"] = ineq.tag
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_inequality(f: TextIO, ineq: LinearInequality, g: Graph):
    f.write(format_inequality(ineq, g))
