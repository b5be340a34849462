"""Seeded random C4-free graphs that the classifier should certify.

Each graph is built from a simple "root" graph: root nodes become cliques
and a root edge becomes the vertex its two cliques share; pendant vertices
pad cliques to size at least two. A bipartite root
of girth at least six gives a claw-free, C4-free graph with no odd hole.
"""
from __future__ import annotations

import random
from itertools import combinations

from spg.graph import Graph, disjoint_union

KINDS = ("tree", "ring", "mesh", "union")


def _has_short_path(adj: list[set[int]], x: int, y: int, length: int) -> bool:
    # is there a walk of at most `length` edges from x to y
    frontier, seen = {x}, {x}
    for _ in range(length):
        frontier = {v for u in frontier for v in adj[u]} - seen
        if y in frontier:
            return True
        seen |= frontier
    return False


def _root_tree(rng: random.Random, nodes: int) -> tuple[int, list[tuple[int, int]]]:
    return nodes, [(rng.randrange(i), i) for i in range(1, nodes)]


def _root_ring(rng: random.Random, budget: int) -> tuple[int, list[tuple[int, int]]]:
    length = rng.choice([k for k in (6, 8, 10, 12) if k <= budget] or [6])
    edges = [(i, (i + 1) % length) for i in range(length)]
    nodes = length
    for _ in range(rng.randint(0, max(0, budget - length))):
        edges.append((rng.randrange(nodes), nodes))
        nodes += 1
    return nodes, edges


def _root_mesh(rng: random.Random, budget: int) -> tuple[int, list[tuple[int, int]]]:
    # random bipartite graph of girth >= 6: add x-y only if no x..y path of length <= 3
    left, right = rng.randint(2, 5), rng.randint(2, 5)
    nodes = left + right
    adj: list[set[int]] = [set() for _ in range(nodes)]
    pairs = [(x, y) for x in range(left) for y in range(left, nodes)]
    rng.shuffle(pairs)
    edges = []
    for x, y in pairs:
        if len(edges) >= budget:
            break
        if not _has_short_path(adj, x, y, 3):
            adj[x].add(y)
            adj[y].add(x)
            edges.append((x, y))
    return nodes, edges


def _line_graph_of_root(rng: random.Random, nodes: int, root_edges: list[tuple[int, int]], max_vertices: int) -> Graph | None:
    members: list[list[int]] = [[] for _ in range(nodes)]
    n = 0
    for x, y in root_edges:
        members[x].append(n)
        members[y].append(n)
        n += 1
    for c in range(nodes):
        need = max(1 if not members[c] else 0, 2 - len(members[c]))
        extra = need + (rng.random() < 0.3)
        for _ in range(extra):
            members[c].append(n)
            n += 1
    if n > max_vertices:
        return None
    edges = {(min(u, v), max(u, v)) for m in members for u, v in combinations(m, 2)}
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph(n, edges).relabel(perm)


def random_collection_of_cliques(rng: random.Random, kind: str, max_vertices: int = 12) -> Graph:
    """One random certified-SPG graph of the given ``kind`` on at most ``max_vertices`` vertices."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    while True:
        if kind == "union":
            half = max_vertices // 2
            parts = [random_collection_of_cliques(rng, rng.choice(KINDS[:1] + KINDS[2:3]), half) for _ in range(2)]
            g = disjoint_union(*parts)
            if rng.random() < 0.3 and g.n < max_vertices:
                g = g.add_vertices(1)
            return g
        if kind == "tree":
            nodes, edges = _root_tree(rng, rng.randint(1, 6))
        elif kind == "ring":
            nodes, edges = _root_ring(rng, max_vertices)
        else:
            nodes, edges = _root_mesh(rng, max_vertices)
        g = _line_graph_of_root(rng, nodes, edges, max_vertices)
        if g is not None:
            return g


def corpus(count: int = 240, seed: int = 0, max_vertices: int = 12) -> list[tuple[str, Graph]]:
    """``count`` graphs cycling through the kinds, reproducible from ``seed``."""
    rng = random.Random(seed)
    return [(KINDS[i % len(KINDS)], random_collection_of_cliques(rng, KINDS[i % len(KINDS)], max_vertices)) for i in range(count)]
