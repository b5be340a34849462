"""Text formats for graphs: edge list, JSON and DOT."""
from __future__ import annotations

import json
from collections.abc import Mapping

from spg.graph import Graph


class GraphFormatError(ValueError):
    pass


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphFormatError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(nums) != 2:
            raise GraphFormatError(f"line {lineno}: expected two integers, got {raw!r}")
        rows.append((lineno, nums[0], nums[1]))
    if not rows:
        raise GraphFormatError("missing 'n m' header")
    _, n, m = rows[0]
    body = rows[1:]
    if n < 0 or m < 0:
        raise GraphFormatError("header counts must be non-negative")
    if len(body) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(body)}")
    seen = set()
    edges = []
    for lineno, u, v in body:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphFormatError(f"line {lineno}: invalid edge {u} {v} for n={n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append(key)
    return Graph(n, edges)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_dict(data: Mapping) -> Graph:
    try:
        n = data["n"]
        edges = data["edges"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise TypeError("n must be an integer")
        pairs = []
        for e in edges:
            u, v = e
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (u, v)):
                raise TypeError(f"non-integer vertex in edge {e!r}")
            pairs.append((u, v))
        if len(set((min(u, v), max(u, v)) for u, v in pairs)) != len(pairs):
            raise ValueError("duplicate edge")
        return Graph(n, pairs)
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"invalid graph JSON: {exc}") from None


def parse_graph_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise GraphFormatError("graph JSON must be an object")
    return graph_from_dict(data)


def format_graph_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g))


def to_dot(
    g: Graph,
    name: str = "G",
    edge_labels: Mapping[tuple[int, int], object] | None = None,
    vertex_labels: Mapping[int, str] | None = None,
) -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        if vertex_labels and v in vertex_labels:
            lines.append(f'  {v} [label="{vertex_labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges():
        label = None
        if edge_labels:
            label = edge_labels.get((u, v), edge_labels.get((v, u)))
        if label is None:
            lines.append(f"  {u} -- {v};")
        else:
            lines.append(f'  {u} -- {v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
