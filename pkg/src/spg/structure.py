"""Cliques, induced-pattern search, induced cycles and girth."""
from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass

from spg.graph import (
    Graph,
    bits_of,
    claw,
    complete_bipartite,
    cycle_graph,
    induced_subgraph,
    iter_bits,
    k4_minus_e,
)

DEFAULT_PATTERN_CAP = 8
DEFAULT_WORK_BUDGET = 10_000_000


class BudgetExhausted(RuntimeError):
    """Raised when a search exceeds its node-expansion budget."""


_NAMED_PATTERNS = {
    "claw": claw,
    "K4-e": k4_minus_e,
    "K2,3": lambda: complete_bipartite(2, 3),
}
_CYCLE_NAME = re.compile(r"C(\d+)$")


def pattern_graph(name: str) -> Graph:
    """Resolve a pattern name: ``claw``, ``K4-e``, ``K2,3`` or ``C<k>``."""
    if name in _NAMED_PATTERNS:
        return _NAMED_PATTERNS[name]()
    match = _CYCLE_NAME.match(name)
    if match and int(match.group(1)) >= 3:
        return cycle_graph(int(match.group(1)))
    raise ValueError(f"unknown pattern {name!r}")


@dataclass(frozen=True)
class InducedWitness:
    """Vertices of a host graph inducing a named pattern.

    ``vertices[i]`` plays the role of pattern vertex ``i``; for cycles the
    vertices are listed in cycle order.
    """

    pattern: str
    vertices: tuple[int, ...]

    def check(self, g: Graph) -> bool:
        p = pattern_graph(self.pattern)
        vs = self.vertices
        if len(vs) != p.n or len(set(vs)) != len(vs) or not all(0 <= v < g.n for v in vs):
            return False
        return all(
            g.has_edge(vs[i], vs[j]) == p.has_edge(i, j) for i in range(p.n) for j in range(i + 1, p.n)
        )

    def to_dict(self) -> dict:
        return {"pattern": self.pattern, "vertices": list(self.vertices)}


# -- maximal cliques -----------------------------------------------------------


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques, each sorted, in lexicographic order.

    Bron--Kerbosch with Tomita pivoting over bitmasks. Isolated vertices
    come back as singleton cliques.
    """
    adj = g.adj
    out: list[tuple[int, ...]] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(iter_bits(r)))
            return
        pivot = max(iter_bits(p | x), key=lambda u: (adj[u] & p).bit_count())
        for v in iter_bits(p & ~adj[pivot]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    if g.n:
        expand(0, (1 << g.n) - 1, 0)
    out.sort()
    return out


# -- induced pattern search ------------------------------------------------------


def iter_induced(g: Graph, pattern: Graph | str, cap: int = DEFAULT_PATTERN_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every injective map (as a vertex tuple) embedding ``pattern`` as an induced subgraph.

    Maps are produced in lexicographic order of the tuples; automorphic
    images of the same vertex set are all reported.
    """
    p = pattern_graph(pattern) if isinstance(pattern, str) else pattern
    if p.n > cap:
        raise ValueError(f"pattern has {p.n} vertices, above the cap of {cap}")
    if p.n > g.n:
        return
    full = (1 << g.n) - 1
    adj = g.adj
    k = p.n
    chosen: list[int] = []

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            yield tuple(chosen)
            return
        cand = full & ~used
        for j in range(i):
            if p.has_edge(i, j):
                cand &= adj[chosen[j]]
            else:
                cand &= ~adj[chosen[j]]
        for v in iter_bits(cand):
            chosen.append(v)
            yield from rec(i + 1, used | (1 << v))
            chosen.pop()

    yield from rec(0, 0)


def find_induced(g: Graph, pattern: Graph | str, cap: int = DEFAULT_PATTERN_CAP) -> InducedWitness | None:
    """First induced copy of ``pattern`` in ``g``, or ``None``."""
    name = pattern if isinstance(pattern, str) else "custom"
    for vs in iter_induced(g, pattern, cap):
        return InducedWitness(name, vs)
    return None


def induced_claws(g: Graph) -> Iterator[tuple[int, int, int, int]]:
    """Each induced claw once, as ``(center, x, y, z)`` with ``x < y < z``."""
    for c in g.vertices():
        nb = g.neighbors(c)
        for i, x in enumerate(nb):
            for j in range(i + 1, len(nb)):
                y = nb[j]
                if g.has_edge(x, y):
                    continue
                for z in nb[j + 1 :]:
                    if not g.has_edge(x, z) and not g.has_edge(y, z):
                        yield (c, x, y, z)


def claw_c4_partner(g: Graph, claw_vertices: tuple[int, int, int, int]) -> tuple[int, int, int, int] | None:
    """An induced 4-cycle using two edges of the given claw, in cycle order."""
    c, *leaves = claw_vertices
    for i in range(3):
        for j in range(i + 1, 3):
            x, y = leaves[i], leaves[j]
            common = g.adj[x] & g.adj[y] & ~g.adj[c] & ~(1 << c)
            for q in iter_bits(common):
                return (c, x, q, y)
    return None


# -- induced cycles ----------------------------------------------------------------


def _hole_filter(length: int, min_length: int, parity: str | None) -> bool:
    if length < min_length:
        return False
    if parity == "odd":
        return length % 2 == 1
    if parity == "even":
        return length % 2 == 0
    return True


def iter_induced_cycles(
    g: Graph,
    min_length: int = 4,
    parity: str | None = None,
    max_length: int | None = None,
    budget: int = DEFAULT_WORK_BUDGET,
) -> Iterator[tuple[int, ...]]:
    """Yield every induced cycle meeting the filter exactly once.

    A cycle is reported starting at its smallest vertex, with its second
    vertex smaller than its last. Chordless paths are grown from the start
    using only larger vertices; a neighbour of the start may appear only in
    second or closing position. For a fixed length the cycles come out in
    lexicographic order. ``budget`` caps the number of path expansions.
    """
    if parity not in (None, "odd", "even"):
        raise ValueError(f"parity must be 'odd', 'even' or None, got {parity!r}")
    adj = g.adj
    limit = g.n if max_length is None else min(max_length, g.n)
    work = 0
    for s in range(g.n):
        higher = ~((1 << (s + 1)) - 1)
        s_nbrs = adj[s] & higher
        for v1 in iter_bits(s_nbrs):
            # (path, vertices on path, union of neighbourhoods of path[1:-1])
            stack = [([s, v1], (1 << s) | (1 << v1), 0)]
            while stack:
                path, on_path, blocked = stack.pop()
                work += 1
                if work > budget:
                    raise BudgetExhausted(f"induced-cycle search exceeded {budget} path expansions")
                last = path[-1]
                cand = adj[last] & higher & ~on_path & ~blocked
                length = len(path) + 1
                if length <= limit and _hole_filter(length, min_length, parity):
                    for x in iter_bits(cand & s_nbrs):
                        if x > v1:
                            yield (*path, x)
                if len(path) + 2 > limit:
                    continue
                grown = blocked | adj[last]
                for x in reversed(list(iter_bits(cand & ~s_nbrs))):
                    stack.append((path + [x], on_path | (1 << x), grown))


def shortest_induced_cycle(
    g: Graph,
    min_length: int = 4,
    parity: str | None = None,
    budget: int = DEFAULT_WORK_BUDGET,
) -> InducedWitness | None:
    """Shortest induced cycle passing the length/parity filter.

    Ties are broken lexicographically on the cycle tuple, so the result is
    reproducible. Searches lengths in increasing order.
    """
    for length in range(max(min_length, 3), g.n + 1):
        if not _hole_filter(length, min_length, parity):
            continue
        for cycle in iter_induced_cycles(g, min_length=length, max_length=length, budget=budget):
            return InducedWitness(f"C{length}", cycle)
    return None


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, ``None`` for forests."""
    best = None
    adj = g.adj
    for root in g.vertices():
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for v in iter_bits(adj[u]):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif parent[u] != v:
                        cycle_len = dist[u] + dist[v] + 1
                        if best is None or cycle_len < best:
                            best = cycle_len
            if best is not None and 2 * (dist[frontier[0]] + 1) > best:
                break
            frontier = nxt
    return best


def is_induced_cycle(g: Graph, vertices: tuple[int, ...]) -> bool:
    """True iff ``vertices`` (in order) form a chordless cycle of length >= 3."""
    return len(vertices) >= 3 and InducedWitness(f"C{len(vertices)}", tuple(vertices)).check(g)


__all__ = [
    "BudgetExhausted",
    "InducedWitness",
    "bits_of",
    "claw_c4_partner",
    "find_induced",
    "girth",
    "induced_claws",
    "induced_subgraph",
    "is_induced_cycle",
    "iter_induced",
    "iter_induced_cycles",
    "maximal_cliques",
    "pattern_graph",
    "shortest_induced_cycle",
]
