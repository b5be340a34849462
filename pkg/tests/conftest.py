import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from spg.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=8, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    g = Graph(n, chosen)
    if connected and n > 1:
        # chain the components together
        comps = g.components()
        g = g.add_edges((comps[i][0], comps[i + 1][0]) for i in range(len(comps) - 1))
    return g


@st.composite
def permutations(draw, n):
    return draw(st.permutations(list(range(n))))


def to_nx(g: Graph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.n))
    out.add_edges_from(g.edges())
    return out


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(pos[u], pos[v]) for u, v in h.edges()])


def brute_force_spg(g: Graph, a: int, b: int) -> tuple[list[tuple[int, ...]], set[tuple[int, int]]]:
    """Geodesics via networkx and SPG edges by comparing every pair."""
    paths = sorted(tuple(p[1:-1]) for p in nx.all_shortest_paths(to_nx(g), a, b))
    edges = set()
    for i, j in itertools.combinations(range(len(paths)), 2):
        if sum(x != y for x, y in zip(paths[i], paths[j])) == 1:
            edges.add((i, j))
    return paths, edges


@pytest.fixture(scope="session")
def catalog7():
    from spg.oracle import exhaustive_search

    return exhaustive_search(7)
