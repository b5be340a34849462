"""Isomorphism testing and canonical forms for small graphs.

Both rest on colour refinement (1-dimensional Weisfeiler--Leman) with
individualisation. Refinement orders colour classes by an
isomorphism-invariant signature, so the search trees of isomorphic graphs
correspond vertex-for-vertex.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache

from spg.graph import Graph, iter_bits


def refine(adj: tuple[int, ...], colors: list[int]) -> list[int]:
    """Coarsest equitable refinement of ``colors``.

    Colours are renumbered ``0..c-1`` by sorted signature, which keeps the
    numbering invariant under relabelling.
    """
    n = len(adj)
    colors = _renumber(colors)
    num = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            counts = Counter(colors[u] for u in iter_bits(adj[v]))
            sigs.append((colors[v], tuple(sorted(counts.items()))))
        new = _renumber(sigs)
        new_num = len(set(new))
        if new_num == num:
            return new
        colors, num = new, new_num


def _renumber(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _individualize(colors: list[int], v: int) -> list[int]:
    # v gets a fresh colour ordered just before the rest of its class
    return [2 * c + (0 if u == v else 1) if c == colors[v] else 2 * c + 1 for u, c in enumerate(colors)]


def _target_cell(colors: list[int]) -> list[int] | None:
    counts = Counter(colors)
    first = min((c for c, k in counts.items() if k > 1), default=None)
    if first is None:
        return None
    return [v for v, c in enumerate(colors) if c == first]


def _is_twin_class(adj: tuple[int, ...], cell: list[int]) -> bool:
    mask = 0
    for v in cell:
        mask |= 1 << v
    outside = {adj[v] & ~mask for v in cell}
    if len(outside) != 1:
        return False
    inside = {(adj[v] | (1 << v)) & mask for v in cell}
    return inside == {mask} or all(adj[v] & mask == 0 for v in cell)


def degree_invariants(g: Graph) -> tuple:
    """Sorted (degree, sorted neighbour degrees) profile; equal for isomorphic graphs."""
    deg = g.degrees()
    return tuple(sorted((deg[v], tuple(sorted(deg[u] for u in g.neighbors(v)))) for v in g.vertices()))


def is_isomorphic(g: Graph, h: Graph) -> dict[int, int] | None:
    """An adjacency-preserving bijection ``g -> h``, or ``None``.

    Fast rejection on counts and degree profiles, then a backtracking search
    over jointly refined colourings of the disjoint union.
    """
    if g.n != h.n or g.m != h.m or degree_invariants(g) != degree_invariants(h):
        return None
    n = g.n
    if n == 0:
        return {}
    union = g.adj + tuple(mask << n for mask in h.adj)
    colors = refine(union, [0] * (2 * n))
    mapping = _iso_search(union, n, colors)
    if mapping is None:
        return None
    bijection = {v: mapping[v] - n for v in range(n)}
    assert all(
        g.has_edge(u, v) == h.has_edge(bijection[u], bijection[v]) for u in range(n) for v in range(u + 1, n)
    )
    return bijection


def _balanced(colors: list[int], n: int) -> bool:
    return Counter(colors[:n]) == Counter(colors[n:])


def _iso_search(union: tuple[int, ...], n: int, colors: list[int]) -> dict[int, int] | None:
    if not _balanced(colors, n):
        return None
    counts = Counter(colors[:n])
    cell = min((c for c, k in counts.items() if k > 1), default=None)
    if cell is None:
        by_color = {colors[v]: v for v in range(n, 2 * n)}
        mapping = {v: by_color[colors[v]] for v in range(n)}
        for u in range(n):
            for v in range(u + 1, n):
                if ((union[u] >> v) & 1) != ((union[mapping[u]] >> mapping[v]) & 1):
                    return None
        return mapping
    v = next(u for u in range(n) if colors[u] == cell)
    for w in (u for u in range(n, 2 * n) if colors[u] == cell):
        pinned = [2 * c + (0 if u in (v, w) else 1) if c == cell else 2 * c + 1 for u, c in enumerate(colors)]
        found = _iso_search(union, n, refine(union, pinned))
        if found is not None:
            return found
    return None


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """Minimum adjacency code over the individualisation-refinement leaves.

    Returns ``(code, perm)`` where ``perm[v]`` is the canonical position of
    ``v``. The code packs the upper triangle of the relabelled adjacency
    matrix row by row, first pair most significant.
    """
    n = g.n
    adj = g.adj
    best: list = [None, None]

    def code_of(perm: list[int]) -> int:
        inv = [0] * n
        for v, p in enumerate(perm):
            inv[p] = v
        code = 0
        for i in range(n):
            row = adj[inv[i]]
            for j in range(i + 1, n):
                code = (code << 1) | ((row >> inv[j]) & 1)
        return code

    def search(colors: list[int]) -> None:
        cell = _target_cell(colors)
        if cell is None:
            perm = _renumber(colors)
            code = code_of(perm)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, perm
            return
        # a class of mutual twins is permuted by automorphisms: one branch suffices
        branches = cell[:1] if _is_twin_class(adj, cell) else cell
        for v in branches:
            search(refine(adj, _individualize(colors, v)))

    search(refine(adj, [0] * n))
    if n == 0:
        return 0, []
    return best[0], best[1]


@lru_cache(maxsize=1 << 16)
def canonical_form(g: Graph) -> Graph:
    _, perm = canonical_labeling(g)
    return g.relabel(perm)


@lru_cache(maxsize=1 << 16)
def canonical_key(g: Graph) -> str:
    """Hex key ``"<n>:<code>"`` identifying the isomorphism class of ``g``."""
    code, _ = canonical_labeling(g)
    width = max(1, (g.n * (g.n - 1) // 2 + 3) // 4)
    return f"{g.n:02x}:{code:0{width}x}"


def graph_from_key(key: str) -> Graph:
    n_hex, code_hex = key.split(":")
    n = int(n_hex, 16)
    code = int(code_hex, 16)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [pair for k, pair in enumerate(pairs) if (code >> (len(pairs) - 1 - k)) & 1]
    return Graph(n, edges)
