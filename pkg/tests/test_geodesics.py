import itertools
import json

import networkx as nx
import pytest
from hypothesis import given, settings

from spg.formats import GraphFormatError
from spg.geodesics import (
    UNREACHABLE,
    GeodesicCapExceeded,
    SpgGraph,
    Unreachable,
    bfs_layers,
    build_spg,
    count_geodesics,
    diff_indices,
    enumerate_geodesics,
    unique_vertex_geodesic,
)
from spg.graph import Graph, complete_graph, cycle_graph, path_graph
from spg.isomorphism import is_isomorphic

from .conftest import brute_force_spg, graphs, to_nx


def gadget(n):
    # a = 0, v_i = i, w = n + 1, b = n + 2
    w, b = n + 1, n + 2
    return Graph(n + 3, [(0, i) for i in range(1, n + 1)] + [(i, w) for i in range(1, n + 1)] + [(w, b)])


# a = 0, x1 = 1, x2 = 2, y1 = 3, y2 = 4, b = 5, complete between layers
BILAYER = Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)])


def test_bfs_layers_examples():
    assert bfs_layers(path_graph(3), 0) == [0, 1, 2]
    assert bfs_layers(Graph(3, [(0, 1)]), 0) == [0, 1, UNREACHABLE]
    assert bfs_layers(complete_graph(4), 2) == [1, 1, 0, 1]
    with pytest.raises(ValueError):
        bfs_layers(path_graph(3), 3)


@given(graphs(min_n=1, max_n=9))
def test_bfs_matches_networkx(g):
    ref = nx.single_source_shortest_path_length(to_nx(g), 0)
    assert bfs_layers(g, 0) == [ref.get(v, UNREACHABLE) for v in g.vertices()]


def test_enumerate_examples():
    four_cycle = Graph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
    assert enumerate_geodesics(four_cycle, 0, 3) == [(1,), (2,)]
    assert enumerate_geodesics(BILAYER, 0, 5) == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert enumerate_geodesics(path_graph(3), 0, 2) == [(1,)]
    assert enumerate_geodesics(path_graph(2), 0, 1) == [()]


def test_enumerate_errors():
    with pytest.raises(Unreachable):
        enumerate_geodesics(Graph(3, [(0, 1)]), 0, 2)
    with pytest.raises(ValueError):
        enumerate_geodesics(path_graph(3), 1, 1)
    with pytest.raises(GeodesicCapExceeded):
        enumerate_geodesics(BILAYER, 0, 5, cap=3)
    assert len(enumerate_geodesics(BILAYER, 0, 5, cap=4)) == 4


def _connected_with_endpoints():
    return graphs(min_n=2, max_n=9, connected=True)


@settings(max_examples=150)
@given(_connected_with_endpoints())
def test_geodesics_match_networkx(g):
    a, b = 0, g.n - 1
    ours = enumerate_geodesics(g, a, b)
    ref = sorted(tuple(p[1:-1]) for p in nx.all_shortest_paths(to_nx(g), a, b))
    assert ours == ref
    assert count_geodesics(g, a, b) == len(ref)
    dist = bfs_layers(g, a)
    for geo in ours:
        full = (a, *geo, b)
        assert all(g.has_edge(x, y) for x, y in zip(full, full[1:]))
        assert [dist[v] for v in geo] == list(range(1, len(geo) + 1))


@settings(max_examples=150)
@given(_connected_with_endpoints())
def test_spg_edges_match_quadratic_oracle(g):
    a, b = 0, g.n - 1
    spg = build_spg(g, a, b)
    paths, edges = brute_force_spg(g, a, b)
    assert list(spg.geodesics) == paths
    assert {(i, j) for i, j, _ in spg.edges} == edges
    for i, j, label in spg.edges:
        assert diff_indices(spg.geodesics[i], spg.geodesics[j]) == {label}


def test_diff_indices_examples():
    assert diff_indices((1, 3), (1, 3)) == frozenset()
    assert diff_indices((1, 3), (1, 4)) == {2}
    assert diff_indices((1, 3), (2, 4)) == {1, 2}
    with pytest.raises(ValueError):
        diff_indices((1,), (1, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_gadget_spg_is_complete(n):
    spg = build_spg(gadget(n), 0, n + 2)
    assert spg.graph == complete_graph(n)
    assert {label for *_, label in spg.edges} <= {1}


def test_bilayer_spg_is_c4_with_alternating_labels():
    spg = build_spg(BILAYER, 0, 5)
    assert is_isomorphic(spg.graph, cycle_graph(4)) is not None
    cycle = [0, 1, 3, 2]
    labels = [spg.label(cycle[k], cycle[(k + 1) % 4]) for k in range(4)]
    assert labels == [2, 1, 2, 1]


def test_path_spg_is_single_vertex():
    spg = build_spg(path_graph(3), 0, 2)
    assert spg.graph.n == 1 and spg.graph.m == 0
    assert build_spg(path_graph(2), 0, 1).geodesics == ((),)


def test_unique_vertex_geodesic():
    n = 4
    spg = build_spg(gadget(n), 0, n + 2)
    for i in range(1, n + 1):
        assert spg.geodesics[unique_vertex_geodesic(spg, i)] == (i, n + 1)
    assert unique_vertex_geodesic(spg, n + 1) is None
    assert unique_vertex_geodesic(build_spg(BILAYER, 0, 5), 1) is None
    with pytest.raises(ValueError):
        unique_vertex_geodesic(spg, 0)
    with pytest.raises(ValueError):
        unique_vertex_geodesic(spg, n + 2)


@settings(max_examples=100)
@given(_connected_with_endpoints())
def test_spg_json_round_trip(g):
    spg = build_spg(g, 0, g.n - 1)
    back = SpgGraph.from_dict(json.loads(spg.to_json()))
    assert back.geodesics == spg.geodesics and back.edges == spg.edges
    assert (back.a, back.b) == (spg.a, spg.b)


def test_spg_json_rejects_wrong_label():
    data = build_spg(BILAYER, 0, 5).to_dict()
    data["edges"][0][2] = 7
    with pytest.raises(GraphFormatError):
        SpgGraph.from_dict(data)
    with pytest.raises(GraphFormatError):
        SpgGraph.from_dict({"geodesics": [[1], [1]], "edges": [], "a": 0, "b": 2})


def test_spg_dot():
    dot = build_spg(BILAYER, 0, 5).to_dot()
    assert dot.count("--") == 4 and 'label="1"' in dot


@settings(max_examples=100)
@given(_connected_with_endpoints())
def test_local_label_structure(g):
    spg = build_spg(g, 0, g.n - 1)
    h = spg.graph
    # triangles carry one label; induced 4-cycles alternate two labels
    for x, y, z in itertools.combinations(h.vertices(), 3):
        if h.has_edge(x, y) and h.has_edge(y, z) and h.has_edge(x, z):
            assert spg.label(x, y) == spg.label(y, z) == spg.label(x, z)
    from spg.structure import iter_induced

    for c in iter_induced(h, "C4"):
        labels = [spg.label(c[k], c[(k + 1) % 4]) for k in range(4)]
        assert labels[0] == labels[2] != labels[1] == labels[3]
