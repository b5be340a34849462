import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spg.classifier import InternalInconsistency, Status, classify
from spg.corpus import KINDS, random_collection_of_cliques
from spg.geodesics import build_spg
from spg.graph import Graph, claw, complete_graph, cycle_graph, disjoint_union as graph_union, path_graph
from spg.isomorphism import is_isomorphic
from spg.synthesis import (
    NotSynthesizable,
    SynthesisCertificate,
    SynthesisError,
    check_certificate,
    check_state,
    construction_A,
    construction_B,
    construction_C,
    disjoint_union,
    empty_state,
    extend_distance,
    one_sum_clique,
    replay,
    state_from_base,
    synth_complete,
    synthesize,
    verify,
)


def realised(state):
    """The recomputed SPG, relabelled to target ids through geodesic_of."""
    spg = build_spg(state.graph, state.a, state.b)
    target_of = {geo: t for t, geo in state.geodesic_of.items()}
    return {tuple(sorted((target_of[spg.geodesics[i]], target_of[spg.geodesics[j]]))) for i, j, _ in spg.edges}


def labels_by_target(state):
    spg = build_spg(state.graph, state.a, state.b)
    target_of = {geo: t for t, geo in state.geodesic_of.items()}
    return {
        tuple(sorted((target_of[spg.geodesics[i]], target_of[spg.geodesics[j]]))): lab for i, j, lab in spg.edges
    }


@pytest.mark.parametrize("n", [1, 3, 5])
def test_synth_complete(n):
    s = synth_complete(n)
    assert s.graph.n == n + 3 and s.distance == 3
    assert realised(s) == {(i, j) for i in range(n) for j in range(i + 1, n)}
    assert set(labels_by_target(s).values()) <= {1}
    assert set(s.unique_vertex_of) == set(range(n))
    with pytest.raises(SynthesisError):
        synth_complete(0)


def test_one_sum_path_alternates_labels():
    s = synth_complete(2)
    s = one_sum_clique(s, 1, 2)
    s = one_sum_clique(s, 2, 2)
    assert realised(s) == {(0, 1), (1, 2), (2, 3)}
    labels = labels_by_target(s)
    assert [labels[(0, 1)], labels[(1, 2)], labels[(2, 3)]] == [1, 2, 1]
    assert s.index_levels == 2


def test_one_sum_triangle_at_unique_vertex():
    s = one_sum_clique(synth_complete(3), 0, 3)
    assert realised(s) == {(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)}
    assert 0 not in s.unique_vertex_of and {3, 4} <= set(s.unique_vertex_of)


def test_one_sum_preconditions():
    s = one_sum_clique(synth_complete(2), 1, 2)
    with pytest.raises(SynthesisError):
        one_sum_clique(s, 1, 2)  # 1 lost its unique vertex
    with pytest.raises(SynthesisError):
        one_sum_clique(s, 0, 1)
    with pytest.raises(SynthesisError):
        one_sum_clique(s, 9, 2)
    with pytest.raises(SynthesisError):
        one_sum_clique(s, 0, 2, new_ids=[1])


def test_one_sum_on_distance_two_state_extends_first():
    s = state_from_base(path_graph(3), 0, 2)
    assert s.index_levels == 1
    s = one_sum_clique(s, 0, 3)
    assert realised(s) == {(0, 1), (0, 2), (1, 2)}


def test_extend_distance():
    s = synth_complete(3)
    assert extend_distance(s, 3) is s
    e = extend_distance(s, 5)
    assert e.distance == 5 and realised(e) == realised(s)
    assert e.unique_vertex_of == s.unique_vertex_of
    with pytest.raises(SynthesisError):
        extend_distance(e, 4)


def _path_of_k2(length):
    s = synth_complete(2)
    for t in range(1, length):
        s = one_sum_clique(s, t, 2)
    return s


def test_construction_c_closes_path_into_c6():
    s = _path_of_k2(4)  # P5 on 0..4, labels 1, 2, 1, 2
    c = construction_C(s, [0], [4], new_id=5)
    h, ids = c.target_graph()
    assert is_isomorphic(h, cycle_graph(6)) is not None
    assert c.target_neighbors(5) == {0, 4}
    assert realised(c) == c.target_edges


def test_construction_c_rejects_bad_cliques():
    # path of cliques K3 - K2 - K3: both triangles carry label 1
    s = synth_complete(3)
    s = one_sum_clique(s, 2, 2)
    s = one_sum_clique(s, 3, 3)
    labels = labels_by_target(s)
    assert labels[(0, 1)] == labels[(4, 5)] == 1
    with pytest.raises(SynthesisError):
        construction_C(s, [0, 1, 2], [3, 4, 5])  # same parity
    with pytest.raises(SynthesisError):
        construction_C(s, [0, 1, 2], [2, 3])  # not disjoint
    with pytest.raises(SynthesisError):
        construction_C(s, [0, 1], [3])  # not a whole clique at a shared vertex


def test_construction_c_same_parity_rejected():
    s = _path_of_k2(3)  # P4: end edges both label 1
    with pytest.raises(SynthesisError, match="parity"):
        construction_C(s, [0, 1], [2, 3])


def test_construction_c_needs_two_levels():
    s = extend_distance(_path_of_k2(4), 4)
    with pytest.raises(SynthesisError):
        construction_C(s, [0], [4])


def _k2_path_ends():
    s = one_sum_clique(synth_complete(2), 1, 2)
    return s  # 0 - 1 - 2, unique vertices of 0 and 2 on levels 1 and 2


def test_construction_a_closes_even_ring():
    c = construction_A(_k2_path_ends(), 0, 2, 2, 2)
    assert is_isomorphic(c.target_graph()[0], cycle_graph(4)) is not None
    assert realised(c) == c.target_edges


def test_construction_a_with_triangle():
    c = construction_A(_k2_path_ends(), 0, 2, 3, 2, new_ids=[3, 4])
    # ring 0-1-2-3 with the triangle 0, 3, 4 at u
    assert c.target_edges == {(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (3, 4)}
    c = construction_A(_k2_path_ends(), 0, 2, 2, 3, new_ids=[3, 4])
    assert c.target_edges == {(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)}


def test_construction_a_preconditions():
    s = _k2_path_ends()
    with pytest.raises(SynthesisError):
        construction_A(s, 0, 1, 2, 2)  # 1 has no unique vertex
    with pytest.raises(SynthesisError):
        construction_A(s, 0, 2, 1, 2)
    t = one_sum_clique(s, 2, 2)
    with pytest.raises(SynthesisError, match="construction_B"):
        construction_A(t, 0, 3, 2, 2)


def _equal_level_ends():
    # path 0 - 1 - 2 - 3; unique vertices of 0 and 3 both at level 1
    return one_sum_clique(_k2_path_ends(), 2, 2)


def test_construction_b_variants():
    s = _equal_level_ends()
    b = construction_B(s, 0, 3, 2, new_ids=[4])
    assert b.target_edges == {(0, 1), (1, 2), (2, 3), (0, 4), (2, 4), (3, 4)}
    b = construction_B(s, 0, 3, 3, new_ids=[4, 5])
    assert b.target_edges == {(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (4, 5), (2, 4), (3, 4)}
    b = construction_B(s, 0, 3, 3, side="w", new_ids=[4, 5])
    assert b.target_edges == {(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5), (0, 4), (1, 4)}
    assert realised(b) == b.target_edges


def test_construction_b_preconditions():
    s = _equal_level_ends()
    with pytest.raises(SynthesisError):
        construction_B(s, 0, 3, 2, side="x")
    with pytest.raises(SynthesisError, match="construction_A"):
        construction_B(_k2_path_ends(), 0, 2, 2)
    with pytest.raises(SynthesisError):
        construction_B(s, 0, 0, 2)


def test_disjoint_union_of_states():
    u = disjoint_union(synth_complete(2), synth_complete(3))
    assert is_isomorphic(u.target_graph()[0], graph_union(complete_graph(2), complete_graph(3))) is not None
    c6 = construction_C(_path_of_k2(4), [0], [4])
    cc = disjoint_union(c6, c6)
    assert is_isomorphic(cc.target_graph()[0], graph_union(cycle_graph(6), cycle_graph(6))) is not None
    assert disjoint_union(u, empty_state()) is u
    assert disjoint_union(empty_state(), u) is u


def test_state_from_base_and_check_state():
    s = state_from_base(Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]), 0, 5)
    assert len(s.geodesic_of) == 4 and s.unique_vertex_of == {}
    broken = s._evolve(target_edges=frozenset())
    with pytest.raises(InternalInconsistency):
        check_state(broken)


@pytest.mark.parametrize(
    "h",
    [cycle_graph(4), cycle_graph(6), cycle_graph(8), path_graph(1), path_graph(5), complete_graph(4), Graph(3)],
)
def test_synthesize_and_verify(h):
    cert = synthesize(h)
    assert cert.index_levels == 2
    assert check_certificate(cert, h) is not None
    result = verify(h)
    assert result.passed and result.isomorphism is not None


def test_synthesize_rejects_non_spg():
    with pytest.raises(NotSynthesizable) as info:
        synthesize(claw())
    assert info.value.verdict.status is Status.NOT_SPG
    with pytest.raises(NotSynthesizable):
        synthesize(cycle_graph(5))
    with pytest.raises(SynthesisError):
        synthesize(Graph(0))


def test_tree_certificate_log_is_one_sums():
    tree = Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4), (4, 5)])
    cert = synthesize(tree)
    ops = [step["op"] for step in cert.log]
    assert ops[0] == "synth_complete" and set(ops[1:]) == {"one_sum_clique"}


def test_certificate_json_round_trip_and_replay():
    h = Graph(9, [(i, (i + 1) % 6) for i in range(6)] + [(0, 6), (1, 6), (2, 7), (3, 7), (4, 8), (5, 8)])
    cert = synthesize(h)
    back = SynthesisCertificate.from_dict(json.loads(json.dumps(cert.to_dict())))
    assert back == cert
    rebuilt = replay(back.log)
    assert rebuilt.graph == cert.base and (rebuilt.a, rebuilt.b) == (cert.a, cert.b)


def test_check_certificate_detects_tampering():
    h = cycle_graph(6)
    cert = synthesize(h)
    assert check_certificate(cert, cycle_graph(6)) is not None
    assert check_certificate(cert, path_graph(6)) is None
    corr = list(cert.correspondence)
    corr[0], corr[2] = corr[2], corr[0]
    swapped = SynthesisCertificate(cert.base, cert.a, cert.b, tuple(corr), 2)
    assert check_certificate(swapped, h) is None


def test_replay_rejects_garbage():
    with pytest.raises(SynthesisError):
        replay([])
    with pytest.raises(SynthesisError):
        replay([{"op": "extend_distance", "n_prime": 4}])
    with pytest.raises(SynthesisError):
        replay([{"op": "synth_complete", "n": 2, "ids": [0, 1]}, {"op": "bogus"}])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(KINDS))
def test_random_collections_verify(seed, kind):
    h = random_collection_of_cliques(random.Random(seed), kind, max_vertices=10)
    assert classify(h).status is Status.SPG_BY_THEOREM
    cert = synthesize(h, strict=False)
    assert cert.index_levels == 2
    assert check_certificate(cert, h) is not None
    assert is_isomorphic(build_spg(cert.base, cert.a, cert.b).graph, h) is not None
