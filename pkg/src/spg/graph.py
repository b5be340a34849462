"""Immutable simple undirected graphs over dense integer vertex ids.

Adjacency is kept as one Python ``int`` bitmask per vertex, so neighbourhood
intersections in the hot loops (clique enumeration, induced search, geodesic
layers) are single bitwise operations.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    Instances are immutable and hashable; every "modifying" method returns a
    new graph.
    """

    __slots__ = ("_n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self._n = n
        self._adj = tuple(adj)

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> Graph:
        n = len(masks)
        full = (1 << n) - 1
        for v, mask in enumerate(masks):
            if mask & ~full or (mask >> v) & 1:
                raise ValueError(f"invalid adjacency mask for vertex {v}")
            for u in iter_bits(mask):
                if not (masks[u] >> v) & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        g = cls.__new__(cls)
        g._n = n
        g._adj = tuple(masks)
        return g

    # -- basic queries -----------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood bitmask of every vertex."""
        return self._adj

    @property
    def m(self) -> int:
        return sum(mask.bit_count() for mask in self._adj) // 2

    def vertices(self) -> range:
        return range(self._n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [mask.bit_count() for mask in self._adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self._n) for v in iter_bits(self._adj[u] >> (u + 1) << (u + 1))]

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        mask = bits_of(vs)
        return all((self._adj[v] | (1 << v)) & mask == mask for v in vs)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest member."""
        seen = 0
        comps = []
        for s in range(self._n):
            if (seen >> s) & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self._adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(iter_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- derived graphs ----------------------------------------------------

    def add_vertices(self, k: int) -> Graph:
        return Graph.from_masks(self._adj + (0,) * k)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self._n, self.edges() + list(edges))

    def remove_vertex(self, v: int) -> tuple[Graph, dict[int, int]]:
        return induced_subgraph(self, [u for u in range(self._n) if u != v])

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise ValueError("relabeling must be a permutation of the vertex set")
        return Graph(self._n, [(perm[u], perm[v]) for u, v in self.edges()])

    def complement(self) -> Graph:
        full = (1 << self._n) - 1
        return Graph.from_masks([full & ~mask & ~(1 << v) for v, mask in enumerate(self._adj)])

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._n, self._adj))

    def __len__(self) -> int:
        return self._n

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, edges={self.edges()})"


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced by ``s`` plus the old->new vertex map.

    New ids follow the sorted order of ``s``.
    """
    members = sorted(set(s))
    for v in members:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range for n={g.n}")
    relabel = {old: new for new, old in enumerate(members)}
    edges = [(relabel[u], relabel[v]) for u in members for v in iter_bits(g.adj[u]) if u < v and v in relabel]
    return Graph(len(members), edges), relabel


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return Graph(offset, edges)


# -- named families ----------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices (``P_1`` is a single vertex)."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph(p + q, [(u, p + v) for u in range(p) for v in range(q)])


def claw() -> Graph:
    return complete_bipartite(1, 3)


def k4_minus_e() -> Graph:
    # vertices 0 and 1 are the degree-3 pair; 2 and 3 are non-adjacent
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
