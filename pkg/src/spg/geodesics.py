"""All shortest (a, b)-paths of a graph and the shortest path graph they span.

A geodesic is stored as the tuple of its interior vertices, so position
``i - 1`` of the tuple holds the vertex at index level ``i``. Two geodesics
are adjacent in the shortest path graph when they differ at exactly one
index level; that level labels the edge.
"""
from __future__ import annotations

import json
from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

from spg.formats import GraphFormatError, to_dot
from spg.graph import Graph, iter_bits

Geodesic = tuple[int, ...]

UNREACHABLE = -1
DEFAULT_GEODESIC_CAP = 10**6


class Unreachable(ValueError):
    pass


class GeodesicCapExceeded(RuntimeError):
    pass


def bfs_layers(g: Graph, a: int) -> list[int]:
    """Unweighted distances from ``a``; ``UNREACHABLE`` (-1) where there is no path."""
    if not 0 <= a < g.n:
        raise ValueError(f"vertex {a} out of range for n={g.n}")
    dist = [UNREACHABLE] * g.n
    dist[a] = 0
    seen = 1 << a
    frontier = 1 << a
    d = 0
    while frontier:
        d += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= frontier
        for v in iter_bits(frontier):
            dist[v] = d
    return dist


def _geodesic_layers(g: Graph, a: int, b: int) -> tuple[list[int], list[int]]:
    """Per-level bitmasks of vertices lying on some (a, b)-geodesic, plus dist from a."""
    if a == b:
        raise ValueError("endpoints must be distinct")
    for v in (a, b):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    da = bfs_layers(g, a)
    if da[b] == UNREACHABLE:
        raise Unreachable(f"vertex {b} is not reachable from {a}")
    db = bfs_layers(g, b)
    total = da[b]
    layers = [0] * (total + 1)
    for v in g.vertices():
        if da[v] != UNREACHABLE and db[v] != UNREACHABLE and da[v] + db[v] == total:
            layers[da[v]] |= 1 << v
    return layers, da


def count_geodesics(g: Graph, a: int, b: int) -> int:
    """Number of (a, b)-geodesics, by dynamic programming over the shortest-path DAG."""
    layers, _ = _geodesic_layers(g, a, b)
    ways = {a: 1}
    for level in range(1, len(layers)):
        ways = {v: sum(c for u, c in ways.items() if g.has_edge(u, v)) for v in iter_bits(layers[level])}
    return ways.get(b, 0)


def enumerate_geodesics(g: Graph, a: int, b: int, cap: int = DEFAULT_GEODESIC_CAP) -> list[Geodesic]:
    """All (a, b)-geodesics, each once, in lexicographic order of interiors.

    Raises ``GeodesicCapExceeded`` (and returns nothing) if there are more
    than ``cap`` of them.
    """
    count = count_geodesics(g, a, b)
    if count > cap:
        raise GeodesicCapExceeded(f"{count} geodesics between {a} and {b} exceed the cap of {cap}")
    layers, _ = _geodesic_layers(g, a, b)
    p = len(layers) - 2
    out: list[Geodesic] = []
    path: list[int] = []

    def walk(prev: int, level: int) -> None:
        if level > p:
            if g.has_edge(prev, b):
                out.append(tuple(path))
            return
        for v in iter_bits(g.adj[prev] & layers[level]):
            path.append(v)
            walk(v, level + 1)
            path.pop()

    walk(a, 1)
    return out


def diff_indices(u: Sequence[int], w: Sequence[int]) -> frozenset[int]:
    """Index levels (1-based) at which two equal-length geodesics differ."""
    if len(u) != len(w):
        raise ValueError(f"geodesics have different lengths ({len(u)} vs {len(w)})")
    return frozenset(i + 1 for i, (x, y) in enumerate(zip(u, w)) if x != y)


@dataclass(frozen=True)
class SpgGraph:
    """The shortest path graph S(G, a, b) with difference-index edge labels."""

    geodesics: tuple[Geodesic, ...]
    edges: tuple[tuple[int, int, int], ...]
    source: Graph | None
    a: int
    b: int

    @cached_property
    def graph(self) -> Graph:
        return Graph(len(self.geodesics), [(i, j) for i, j, _ in self.edges])

    @cached_property
    def labels(self) -> dict[tuple[int, int], int]:
        out = {}
        for i, j, lab in self.edges:
            out[(i, j)] = lab
            out[(j, i)] = lab
        return out

    @cached_property
    def index(self) -> dict[Geodesic, int]:
        return {geo: i for i, geo in enumerate(self.geodesics)}

    @property
    def index_levels(self) -> int:
        return len(self.geodesics[0]) if self.geodesics else 0

    def label(self, i: int, j: int) -> int:
        return self.labels[(i, j)]

    def to_dict(self) -> dict:
        return {
            "geodesics": [list(geo) for geo in self.geodesics],
            "edges": [list(e) for e in self.edges],
            "a": self.a,
            "b": self.b,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_dot(self) -> str:
        names = {i: "".join(f"{v}." for v in geo).rstrip(".") or "()" for i, geo in enumerate(self.geodesics)}
        return to_dot(self.graph, name="SPG", edge_labels=self.labels, vertex_labels=names)

    @classmethod
    def from_dict(cls, data: Mapping, source: Graph | None = None) -> SpgGraph:
        try:
            geodesics = tuple(tuple(int(v) for v in geo) for geo in data["geodesics"])
            edges = tuple(sorted((int(i), int(j), int(lab)) for i, j, lab in data["edges"]))
            a, b = int(data["a"]), int(data["b"])
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"invalid SPG JSON: {exc}") from None
        if len(set(geodesics)) != len(geodesics):
            raise GraphFormatError("duplicate geodesics in SPG JSON")
        for i, j, lab in edges:
            if not (0 <= i < j < len(geodesics)):
                raise GraphFormatError(f"edge ({i}, {j}) out of range")
            if diff_indices(geodesics[i], geodesics[j]) != {lab}:
                raise GraphFormatError(f"edge ({i}, {j}) label {lab} disagrees with its geodesics")
        return cls(geodesics, edges, source, a, b)


def spg_edges_by_buckets(geodesics: Sequence[Geodesic]) -> list[tuple[int, int, int]]:
    """Labelled SPG edges by bucketing on "geodesic with level i erased".

    Two distinct geodesics land in the same level-i bucket exactly when they
    agree everywhere except level i, so every bucket is a clique of label i.
    """
    if not geodesics:
        return []
    p = len(geodesics[0])
    edges = []
    for level in range(1, p + 1):
        buckets: dict[tuple, list[int]] = defaultdict(list)
        for idx, geo in enumerate(geodesics):
            buckets[geo[: level - 1] + geo[level:]].append(idx)
        for members in buckets.values():
            for x in range(len(members)):
                for y in range(x + 1, len(members)):
                    edges.append((members[x], members[y], level))
    edges.sort()
    return edges


def build_spg(g: Graph, a: int, b: int, cap: int = DEFAULT_GEODESIC_CAP) -> SpgGraph:
    geodesics = enumerate_geodesics(g, a, b, cap)
    return SpgGraph(tuple(geodesics), tuple(spg_edges_by_buckets(geodesics)), g, a, b)


def unique_vertex_geodesic(spg: SpgGraph, v: int) -> int | None:
    """Index of the only geodesic through base vertex ``v``, else ``None``.

    ``v`` must sit strictly between the endpoints in distance from ``a``.
    """
    if spg.source is None:
        raise ValueError("SPG has no base graph attached")
    if not 0 <= v < spg.source.n:
        raise ValueError(f"vertex {v} out of range")
    level = bfs_layers(spg.source, spg.a)[v]
    if not 0 < level <= spg.index_levels:
        raise ValueError(f"vertex {v} is not at an interior index level")
    hits = [i for i, geo in enumerate(spg.geodesics) if geo[level - 1] == v]
    return hits[0] if len(hits) == 1 else None
