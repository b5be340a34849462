"""Base graphs that realise prescribed shortest path graphs.

A :class:`BaseGraphState` pairs a base graph and its endpoints with the
target graph it is meant to realise: every target vertex id is mapped to the
geodesic standing for it. Each operation returns a new state, and in strict
mode recomputes the shortest path graph to confirm the state still realises
its target exactly.
"""
from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from spg.classifier import (
    InternalInconsistency,
    ParityConflict,
    Status,
    Verdict,
    assign_parities,
    classify,
    is_collection_of_cliques,
)
from spg.formats import graph_from_dict, graph_to_dict
from spg.geodesics import Geodesic, Unreachable, bfs_layers, build_spg, diff_indices
from spg.graph import Graph, induced_subgraph
from spg.isomorphism import is_isomorphic
from spg.structure import InducedWitness, maximal_cliques, shortest_induced_cycle

log = logging.getLogger(__name__)


class SynthesisError(ValueError):
    """An operation's precondition does not hold."""


class NotSynthesizable(SynthesisError):
    """The target graph is not certified as an SPG by the classifier."""

    def __init__(self, verdict: Verdict):
        super().__init__(f"classifier verdict is {verdict.status.value}, not {Status.SPG_BY_THEOREM.value}")
        self.verdict = verdict


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def _clique_edges(ids: Sequence[int]) -> set[tuple[int, int]]:
    return {_edge(u, v) for i, u in enumerate(ids) for v in ids[i + 1 :]}


@dataclass(frozen=True)
class BaseGraphState:
    graph: Graph
    a: int
    b: int
    geodesic_of: Mapping[int, Geodesic]
    unique_vertex_of: Mapping[int, int]
    target_edges: frozenset[tuple[int, int]]
    log: tuple[dict, ...] = field(default=())

    @property
    def index_levels(self) -> int:
        for geo in self.geodesic_of.values():
            return len(geo)
        return 0

    @property
    def distance(self) -> int:
        return self.index_levels + 1

    @property
    def target_ids(self) -> list[int]:
        return sorted(self.geodesic_of)

    def target_neighbors(self, t: int) -> set[int]:
        return {v if u == t else u for u, v in self.target_edges if t in (u, v)}

    def target_graph(self) -> tuple[Graph, list[int]]:
        """Target as a dense ``Graph`` plus the list of target ids by position."""
        ids = self.target_ids
        pos = {t: i for i, t in enumerate(ids)}
        return Graph(len(ids), [(pos[u], pos[v]) for u, v in self.target_edges]), ids

    def geodesics_through(self, v: int, level: int) -> list[int]:
        return sorted(t for t, geo in self.geodesic_of.items() if geo[level - 1] == v)

    def _next_ids(self, k: int) -> list[int]:
        start = max(self.geodesic_of, default=-1) + 1
        return list(range(start, start + k))

    def _evolve(self, **changes) -> BaseGraphState:
        fields = {
            "graph": self.graph,
            "a": self.a,
            "b": self.b,
            "geodesic_of": self.geodesic_of,
            "unique_vertex_of": self.unique_vertex_of,
            "target_edges": self.target_edges,
            "log": self.log,
        }
        fields.update(changes)
        return BaseGraphState(**fields)


def empty_state() -> BaseGraphState:
    """Base graph whose shortest path graph has no vertices (unreachable endpoints)."""
    return BaseGraphState(Graph(2), 0, 1, {}, {}, frozenset(), ({"op": "empty"},))


def state_from_base(g: Graph, a: int, b: int, strict: bool = True) -> BaseGraphState:
    """Wrap an arbitrary base graph as a state whose target is its own SPG.

    Target ids follow the lexicographic order of the geodesics. A unique
    vertex is recorded for each geodesic that has one.
    """
    spg = build_spg(g, a, b)
    geodesic_of = dict(enumerate(spg.geodesics))
    unique = {}
    for level in range(1, spg.index_levels + 1):
        through: dict[int, list[int]] = {}
        for t, geo in geodesic_of.items():
            through.setdefault(geo[level - 1], []).append(t)
        for v, ts in through.items():
            if len(ts) == 1:
                unique.setdefault(ts[0], v)
    state = BaseGraphState(
        graph=g,
        a=a,
        b=b,
        geodesic_of=geodesic_of,
        unique_vertex_of=unique,
        target_edges=frozenset((i, j) for i, j, _ in spg.edges),
        log=({"op": "base", "graph": graph_to_dict(g), "a": a, "b": b},),
    )
    return _finish(state, strict)


def check_state(state: BaseGraphState) -> None:
    """Recompute the SPG and compare it with the state's target; raise on mismatch."""
    if not state.geodesic_of:
        try:
            build_spg(state.graph, state.a, state.b)
        except Unreachable:
            return
        raise InternalInconsistency("empty target but the endpoints are connected")
    spg = build_spg(state.graph, state.a, state.b)
    expected = set(state.geodesic_of.values())
    if len(expected) != len(state.geodesic_of) or set(spg.geodesics) != expected:
        raise InternalInconsistency(
            f"geodesic mismatch: computed {sorted(spg.geodesics)}, expected {sorted(expected)}"
        )
    target_of = {geo: t for t, geo in state.geodesic_of.items()}
    got = {_edge(target_of[spg.geodesics[i]], target_of[spg.geodesics[j]]) for i, j, _ in spg.edges}
    if got != state.target_edges:
        raise InternalInconsistency(
            f"edge mismatch: extra {sorted(got - state.target_edges)}, missing {sorted(state.target_edges - got)}"
        )
    levels = bfs_layers(state.graph, state.a)
    for t, v in state.unique_vertex_of.items():
        lvl = levels[v]
        if not 0 < lvl <= state.index_levels or state.geodesics_through(v, lvl) != [t]:
            raise InternalInconsistency(f"target vertex {t} is not the unique geodesic through base vertex {v}")


def _finish(state: BaseGraphState, strict: bool) -> BaseGraphState:
    if strict:
        check_state(state)
    return state


def _level_of(state: BaseGraphState, t: int, v: int) -> int:
    return state.geodesic_of[t].index(v) + 1


def _full_path(state: BaseGraphState, geo: Geodesic) -> tuple[int, ...]:
    return (state.a, *geo, state.b)


# -- operations ----------------------------------------------------------------


def synth_complete(n: int, ids: Sequence[int] | None = None, strict: bool = True) -> BaseGraphState:
    """Gadget a - {v_1..v_n} - w - b realising K_n.

    Base vertex ids: a = 0, v_i = i, w = n + 1, b = n + 2. Geodesic
    ``(v_i, w)`` stands for target vertex ``ids[i - 1]`` and is the only
    geodesic through ``v_i``.
    """
    if n < 1:
        raise SynthesisError("a complete target needs at least one vertex")
    ids = list(range(n)) if ids is None else list(ids)
    if len(ids) != n or len(set(ids)) != n:
        raise SynthesisError(f"need {n} distinct target ids, got {ids}")
    w, b = n + 1, n + 2
    edges = [(0, i) for i in range(1, n + 1)] + [(i, w) for i in range(1, n + 1)] + [(w, b)]
    state = BaseGraphState(
        graph=Graph(n + 3, edges),
        a=0,
        b=b,
        geodesic_of={t: (i + 1, w) for i, t in enumerate(ids)},
        unique_vertex_of={t: i + 1 for i, t in enumerate(ids)},
        target_edges=frozenset(_clique_edges(ids)),
        log=({"op": "synth_complete", "n": n, "ids": ids},),
    )
    return _finish(state, strict)


def extend_distance(state: BaseGraphState, n_prime: int, strict: bool = True) -> BaseGraphState:
    """Hang a path off ``b`` so the endpoints end up ``n_prime`` apart.

    Every geodesic extends uniquely along the new path, so the target is
    unchanged.
    """
    if not state.geodesic_of:
        raise SynthesisError("cannot extend a state with no geodesics")
    d = state.distance
    if n_prime < d:
        raise SynthesisError(f"target distance {n_prime} is below the current distance {d}")
    extra = n_prime - d
    if extra == 0:
        return state
    n = state.graph.n
    tail = list(range(n, n + extra))
    chain = [state.b, *tail]
    graph = state.graph.add_vertices(extra).add_edges(zip(chain, chain[1:]))
    suffix = tuple(chain[:-1])
    new = state._evolve(
        graph=graph,
        b=tail[-1],
        geodesic_of={t: geo + suffix for t, geo in state.geodesic_of.items()},
        log=state.log + ({"op": "extend_distance", "n_prime": n_prime},),
    )
    return _finish(new, strict)


def one_sum_clique(
    state: BaseGraphState,
    u: int,
    k: int,
    new_ids: Sequence[int] | None = None,
    strict: bool = True,
) -> BaseGraphState:
    """Glue a K_k onto target vertex ``u`` at a single vertex.

    ``u`` must be the unique geodesic through some base vertex v_i. New base
    vertices w_j are wired v_i - w_j - v_{i+2}, or v_{i-2} - w_j - v_i when
    v_i sits on the last index level. Each new target vertex is then the
    unique geodesic through its w_j, and ``u`` loses that property.
    """
    if k < 2:
        raise SynthesisError(f"clique size must be at least 2, got {k}")
    if u not in state.geodesic_of:
        raise SynthesisError(f"{u} is not a target vertex")
    if u not in state.unique_vertex_of:
        raise SynthesisError(f"target vertex {u} lacks the unique vertex-path property")
    if state.index_levels < 2:
        state = extend_distance(state, 3, strict=strict)
    new_ids = state._next_ids(k - 1) if new_ids is None else list(new_ids)
    if len(new_ids) != k - 1 or set(new_ids) & set(state.geodesic_of) or len(set(new_ids)) != k - 1:
        raise SynthesisError(f"need {k - 1} fresh target ids, got {new_ids}")

    v = state.unique_vertex_of[u]
    geo = state.geodesic_of[u]
    p = len(geo)
    i = _level_of(state, u, v)
    seq = _full_path(state, geo)
    if i < p:
        left, right, new_level = seq[i], seq[i + 2], i + 1
    else:
        left, right, new_level = seq[i - 2], seq[i], i - 1

    n = state.graph.n
    ws = list(range(n, n + k - 1))
    graph = state.graph.add_vertices(k - 1).add_edges([(left, w) for w in ws] + [(w, right) for w in ws])
    geodesic_of = dict(state.geodesic_of)
    unique = {t: x for t, x in state.unique_vertex_of.items() if t != u}
    for t, w in zip(new_ids, ws):
        geodesic_of[t] = geo[: new_level - 1] + (w,) + geo[new_level:]
        unique[t] = w
    new = state._evolve(
        graph=graph,
        geodesic_of=geodesic_of,
        unique_vertex_of=unique,
        target_edges=state.target_edges | _clique_edges([u, *new_ids]),
        log=state.log + ({"op": "one_sum_clique", "u": u, "k": k, "new_ids": new_ids},),
    )
    return _finish(new, strict)


def _shared_vertex(state: BaseGraphState, side: Sequence[int], level: int) -> int | None:
    """Vertex at ``level`` common to every geodesic of ``side`` and carried by no other geodesic."""
    values = {state.geodesic_of[t][level - 1] for t in side}
    if len(values) != 1:
        return None
    x = values.pop()
    return x if state.geodesics_through(x, level) == sorted(side) else None


def construction_C(
    state: BaseGraphState,
    clique_u: Iterable[int],
    clique_w: Iterable[int],
    new_id: int | None = None,
    strict: bool = True,
) -> BaseGraphState:
    """Add one target vertex adjacent to exactly the two given disjoint cliques.

    Needs exactly two index levels. One clique must have difference index 1
    (its geodesics share a level-2 vertex v and no other geodesic uses v),
    the other difference index 2 (sharing a level-1 vertex v'). Adding the
    base edge v' - v creates the single new geodesic (v', v). A lone vertex
    may stand in for either clique when it is the only geodesic through its
    vertex at the required level.
    """
    side_u = sorted(set(clique_u))
    side_w = sorted(set(clique_w))
    if state.index_levels != 2:
        raise SynthesisError(f"construction C needs exactly two index levels, state has {state.index_levels}")
    if not side_u or not side_w:
        raise SynthesisError("both cliques must be non-empty")
    if set(side_u) & set(side_w):
        raise SynthesisError(f"cliques {side_u} and {side_w} are not disjoint")
    for side in (side_u, side_w):
        if not set(side) <= set(state.geodesic_of):
            raise SynthesisError(f"{side} contains ids that are not target vertices")
        if not _clique_edges(side) <= state.target_edges:
            raise SynthesisError(f"{side} is not a clique of the target")

    roles = None
    for first, second in ((side_u, side_w), (side_w, side_u)):
        v = _shared_vertex(state, first, 2)
        v_prime = _shared_vertex(state, second, 1)
        if v is not None and v_prime is not None:
            roles = (first, second, v, v_prime)
            break
    if roles is None:
        raise SynthesisError(
            f"parity mismatch: {side_u} and {side_w} are not a difference-index-1 / difference-index-2 pair "
            "of whole maximal cliques"
        )
    first, second, v, v_prime = roles
    if state.graph.has_edge(v_prime, v):
        raise SynthesisError(f"base edge {v_prime}-{v} already present")
    new_id = state._next_ids(1)[0] if new_id is None else new_id
    if new_id in state.geodesic_of:
        raise SynthesisError(f"target id {new_id} already in use")

    geodesic_of = dict(state.geodesic_of)
    geodesic_of[new_id] = (v_prime, v)
    unique = {t: x for t, x in state.unique_vertex_of.items() if x not in (v, v_prime)}
    new = state._evolve(
        graph=state.graph.add_edges([(v_prime, v)]),
        geodesic_of=geodesic_of,
        unique_vertex_of=unique,
        target_edges=state.target_edges | {_edge(new_id, t) for t in side_u + side_w},
        log=state.log + ({"op": "construction_C", "clique_u": side_u, "clique_w": side_w, "new_id": new_id},),
    )
    return _finish(new, strict)


def _maximal_cliques_of(state: BaseGraphState, t: int) -> list[tuple[int, ...]]:
    g, ids = state.target_graph()
    return [tuple(ids[x] for x in c) for c in maximal_cliques(g) if ids.index(t) in c]


def _check_pair(state: BaseGraphState, u: int, w: int) -> None:
    for t in (u, w):
        if t not in state.geodesic_of:
            raise SynthesisError(f"{t} is not a target vertex")
        if t not in state.unique_vertex_of:
            raise SynthesisError(f"target vertex {t} lacks the unique vertex-path property")
        if len(_maximal_cliques_of(state, t)) != 1:
            raise SynthesisError(f"target vertex {t} is not in exactly one maximal clique")
    if u == w:
        raise SynthesisError("u and w must differ")
    if _edge(u, w) in state.target_edges:
        raise SynthesisError(f"{u} and {w} are adjacent")


def construction_A(
    state: BaseGraphState,
    u: int,
    w: int,
    k1: int,
    k2: int,
    new_ids: Sequence[int] | None = None,
    strict: bool = True,
) -> BaseGraphState:
    """Attach a K_k1 at ``u`` and a K_k2 at ``w`` that share one new vertex X'.

    The unique vertices of ``u`` and ``w`` must sit on consecutive index
    levels i and i + 1, which must also be exactly where their geodesics
    differ. ``new_ids`` lists X' first, then the k1 - 2 other new vertices of
    u's clique, then the k2 - 2 of w's clique.
    """
    _check_pair(state, u, w)
    if k1 < 2 or k2 < 2:
        raise SynthesisError("clique sizes must be at least 2")
    iu = _level_of(state, u, state.unique_vertex_of[u])
    iw = _level_of(state, w, state.unique_vertex_of[w])
    if iu == iw:
        raise SynthesisError("unique vertices share an index level; use construction_B")
    total = 1 + (k1 - 2) + (k2 - 2)
    new_ids = state._next_ids(total) if new_ids is None else list(new_ids)
    if len(new_ids) != total or len(set(new_ids)) != total or set(new_ids) & set(state.geodesic_of):
        raise SynthesisError(f"need {total} fresh target ids, got {new_ids}")
    x_prime, u_side, w_side = new_ids[0], new_ids[1 : k1 - 1], new_ids[k1 - 1 :]

    lo, hi, lo_side, hi_side = (u, w, u_side, w_side) if iu < iw else (w, u, w_side, u_side)
    i = min(iu, iw)
    geo_lo, geo_hi = state.geodesic_of[lo], state.geodesic_of[hi]
    if max(iu, iw) != i + 1 or diff_indices(geo_lo, geo_hi) != {i, i + 1}:
        raise SynthesisError(
            f"geodesics must differ exactly at the consecutive levels of their unique vertices, "
            f"got diff {sorted(diff_indices(geo_lo, geo_hi))} with levels {iu}, {iw}"
        )
    seq_lo, seq_hi = _full_path(state, geo_lo), _full_path(state, geo_hi)
    v_i, v_before, v_after, w_next = seq_lo[i], seq_lo[i - 1], seq_lo[i + 2], seq_hi[i + 1]

    n = state.graph.n
    hi_vertices = list(range(n, n + len(hi_side)))
    lo_vertices = list(range(n + len(hi_side), n + len(hi_side) + len(lo_side)))
    edges = [(v_i, w_next)]
    edges += [(v_before, x) for x in hi_vertices] + [(x, w_next) for x in hi_vertices]
    edges += [(v_i, x) for x in lo_vertices] + [(x, v_after) for x in lo_vertices]
    graph = state.graph.add_vertices(len(hi_vertices) + len(lo_vertices)).add_edges(edges)

    geodesic_of = dict(state.geodesic_of)
    unique = {t: x for t, x in state.unique_vertex_of.items() if t not in (u, w) and x not in (v_i, w_next)}
    geodesic_of[x_prime] = geo_lo[:i] + (w_next,) + geo_lo[i + 1 :]
    for t, x in zip(hi_side, hi_vertices):
        geodesic_of[t] = geo_hi[: i - 1] + (x,) + geo_hi[i:]
        unique[t] = x
    for t, x in zip(lo_side, lo_vertices):
        geodesic_of[t] = geo_lo[:i] + (x,) + geo_lo[i + 1 :]
        unique[t] = x
    target = state.target_edges | _clique_edges([u, x_prime, *u_side]) | _clique_edges([w, x_prime, *w_side])
    new = state._evolve(
        graph=graph,
        geodesic_of=geodesic_of,
        unique_vertex_of=unique,
        target_edges=frozenset(target),
        log=state.log + ({"op": "construction_A", "u": u, "w": w, "k1": k1, "k2": k2, "new_ids": new_ids},),
    )
    return _finish(new, strict)


def construction_B(
    state: BaseGraphState,
    u: int,
    w: int,
    k1: int,
    side: str = "u",
    new_ids: Sequence[int] | None = None,
    strict: bool = True,
) -> BaseGraphState:
    """Attach a K_k1 at one endpoint whose new vertex X' joins the other endpoint's clique.

    ``side`` names the endpoint the clique is glued to (``"u"`` or ``"w"``).
    Both unique vertices must sit on the same index level i, and the
    geodesics must differ at {i, i + 1} or {i - 1, i}. ``new_ids`` lists X'
    first, then the k1 - 2 remaining clique vertices.
    """
    if side not in ("u", "w"):
        raise SynthesisError(f"side must be 'u' or 'w', got {side!r}")
    _check_pair(state, u, w)
    if k1 < 2:
        raise SynthesisError("clique size must be at least 2")
    x_end, y_end = (u, w) if side == "u" else (w, u)
    i = _level_of(state, x_end, state.unique_vertex_of[x_end])
    if _level_of(state, y_end, state.unique_vertex_of[y_end]) != i:
        raise SynthesisError("unique vertices sit on different index levels; use construction_A")
    geo_x, geo_y = state.geodesic_of[x_end], state.geodesic_of[y_end]
    diff = diff_indices(geo_x, geo_y)
    if diff == {i, i + 1}:
        step = 1
    elif diff == {i - 1, i}:
        step = -1
    else:
        raise SynthesisError(f"geodesics must differ at levels {{i, i+1}} or {{i-1, i}} for i={i}, got {sorted(diff)}")
    total = k1 - 1
    new_ids = state._next_ids(total) if new_ids is None else list(new_ids)
    if len(new_ids) != total or len(set(new_ids)) != total or set(new_ids) & set(state.geodesic_of):
        raise SynthesisError(f"need {total} fresh target ids, got {new_ids}")
    x_prime, rest = new_ids[0], new_ids[1:]

    seq_x, seq_y = _full_path(state, geo_x), _full_path(state, geo_y)
    v_i, w_step, v_far = seq_x[i], seq_y[i + step], seq_x[i + 2 * step]
    n = state.graph.n
    fresh = list(range(n, n + len(rest)))
    edges = [(v_i, w_step)] + [(v_i, x) for x in fresh] + [(x, v_far) for x in fresh]
    graph = state.graph.add_vertices(len(fresh)).add_edges(edges)

    level = i + step
    y_clique = {y_end} | {
        t for t in state.target_neighbors(y_end) if diff_indices(state.geodesic_of[t], geo_y) == {i}
    }
    geodesic_of = dict(state.geodesic_of)
    unique = {t: x for t, x in state.unique_vertex_of.items() if t != x_end and x not in (v_i, w_step)}
    geodesic_of[x_prime] = geo_x[: level - 1] + (w_step,) + geo_x[level:]
    for t, x in zip(rest, fresh):
        geodesic_of[t] = geo_x[: level - 1] + (x,) + geo_x[level:]
        unique[t] = x
    target = state.target_edges | _clique_edges([x_end, x_prime, *rest]) | {_edge(x_prime, t) for t in y_clique}
    new = state._evolve(
        graph=graph,
        geodesic_of=geodesic_of,
        unique_vertex_of=unique,
        target_edges=frozenset(target),
        log=state.log + ({"op": "construction_B", "u": u, "w": w, "k1": k1, "side": side, "new_ids": new_ids},),
    )
    return _finish(new, strict)


def disjoint_union(s1: BaseGraphState, s2: BaseGraphState, strict: bool = True) -> BaseGraphState:
    """Realise the disjoint union of two targets.

    Distances are equalised (and raised to at least 3, so geodesics from
    different sides differ in at least two levels), then the base graphs are
    glued at a and b only. Target ids of ``s2`` are shifted past those of
    ``s1`` when the two id sets overlap.
    """
    if not s2.geodesic_of:
        return s1
    if not s1.geodesic_of:
        return s2
    d = max(s1.distance, s2.distance, 3)
    s1 = extend_distance(s1, d, strict=strict)
    s2 = extend_distance(s2, d, strict=strict)
    offset = 0
    if set(s1.geodesic_of) & set(s2.geodesic_of):
        offset = max(s1.geodesic_of) + 1 - min(s2.geodesic_of)
    n1 = s1.graph.n
    remap = {s2.a: s1.a, s2.b: s1.b}
    for v in s2.graph.vertices():
        if v not in remap:
            remap[v] = n1 + len(remap) - 2
    graph = Graph(n1 + s2.graph.n - 2, s1.graph.edges() + [(remap[x], remap[y]) for x, y in s2.graph.edges()])
    geodesic_of = dict(s1.geodesic_of)
    geodesic_of.update({t + offset: tuple(remap[v] for v in geo) for t, geo in s2.geodesic_of.items()})
    unique = dict(s1.unique_vertex_of)
    unique.update({t + offset: remap[v] for t, v in s2.unique_vertex_of.items()})
    target = s1.target_edges | {(x + offset, y + offset) for x, y in s2.target_edges}
    new = BaseGraphState(
        graph=graph,
        a=s1.a,
        b=s1.b,
        geodesic_of=geodesic_of,
        unique_vertex_of=unique,
        target_edges=frozenset(target),
        log=({"op": "disjoint_union", "left": list(s1.log), "right": list(s2.log), "offset": offset},),
    )
    return _finish(new, strict)


# -- replay -----------------------------------------------------------------------


def replay(steps: Iterable[Mapping], strict: bool = True) -> BaseGraphState:
    """Rebuild a state from its construction log."""
    state: BaseGraphState | None = None
    for step in steps:
        op = step["op"]
        if op == "empty":
            state = empty_state()
        elif op == "synth_complete":
            state = synth_complete(step["n"], step["ids"], strict=strict)
        elif op == "base":
            state = state_from_base(graph_from_dict(step["graph"]), step["a"], step["b"], strict=strict)
        elif op == "disjoint_union":
            state = disjoint_union(replay(step["left"], strict), replay(step["right"], strict), strict=strict)
        elif state is None:
            raise SynthesisError(f"log starts with {op!r}; expected a starting operation")
        elif op == "extend_distance":
            state = extend_distance(state, step["n_prime"], strict=strict)
        elif op == "one_sum_clique":
            state = one_sum_clique(state, step["u"], step["k"], step["new_ids"], strict=strict)
        elif op == "construction_C":
            state = construction_C(state, step["clique_u"], step["clique_w"], step["new_id"], strict=strict)
        elif op == "construction_A":
            state = construction_A(state, step["u"], step["w"], step["k1"], step["k2"], step["new_ids"], strict=strict)
        elif op == "construction_B":
            state = construction_B(
                state, step["u"], step["w"], step["k1"], step["side"], step["new_ids"], strict=strict
            )
        else:
            raise SynthesisError(f"unknown operation {op!r} in log")
    if state is None:
        raise SynthesisError("empty construction log")
    return state


# -- certificates and the synthesizer ------------------------------------------------


@dataclass(frozen=True)
class SynthesisCertificate:
    base: Graph
    a: int
    b: int
    correspondence: tuple[Geodesic, ...]  # target vertex t -> its geodesic
    index_levels: int
    log: tuple[dict, ...] = ()

    def to_dict(self) -> dict:
        return {
            "base": graph_to_dict(self.base),
            "a": self.a,
            "b": self.b,
            "correspondence": [list(geo) for geo in self.correspondence],
            "index_levels": self.index_levels,
            "log": list(self.log),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> SynthesisCertificate:
        return cls(
            base=graph_from_dict(data["base"]),
            a=int(data["a"]),
            b=int(data["b"]),
            correspondence=tuple(tuple(int(v) for v in geo) for geo in data["correspondence"]),
            index_levels=int(data["index_levels"]),
            log=tuple(data.get("log", ())),
        )


def check_certificate(cert: SynthesisCertificate, h: Graph) -> dict[int, int] | None:
    """Recompute the SPG of the certificate's base graph and test it against ``h``.

    Returns the map target vertex -> SPG vertex index when the correspondence
    carries the edges of ``h`` exactly onto the recomputed SPG, else ``None``.
    """
    if len(cert.correspondence) != h.n:
        return None
    spg = build_spg(cert.base, cert.a, cert.b)
    if len(spg.geodesics) != h.n or spg.index_levels != cert.index_levels:
        return None
    index = spg.index
    try:
        mapping = {t: index[geo] for t, geo in enumerate(cert.correspondence)}
    except KeyError:
        return None
    if len(set(mapping.values())) != h.n:
        return None
    got = {_edge(mapping[u], mapping[v]) for u, v in h.edges()}
    if got != {(i, j) for i, j, _ in spg.edges}:
        return None
    return mapping


def _hole_split(h: Graph, current: set[int]) -> tuple[int, list[int], list[int]] | None:
    """Vertex X to delete and the two cliques it joins on a shortest hole, in original ids."""
    sub, relabel = induced_subgraph(h, current)
    back = {new: old for old, new in relabel.items()}
    hole = shortest_induced_cycle(sub)
    if hole is None:
        return None
    x, nb1, nb2 = hole.vertices[0], hole.vertices[1], hole.vertices[-1]
    cliques = maximal_cliques(sub)
    h1 = next(c for c in cliques if x in c and nb1 in c)
    h2 = next(c for c in cliques if x in c and nb2 in c)
    return back[x], sorted(back[v] for v in h1 if v != x), sorted(back[v] for v in h2 if v != x)


def _build_tree_of_cliques(h: Graph, members: Iterable[int], strict: bool) -> BaseGraphState:
    sub, relabel = induced_subgraph(h, members)
    back = {new: old for old, new in relabel.items()}
    cliques = [tuple(back[v] for v in c) for c in maximal_cliques(sub)]
    root = min(cliques, key=lambda c: (-len(c), c))
    state = synth_complete(len(root), root, strict=strict)
    seen = {root}
    queue = [root]
    while queue:
        clique = queue.pop(0)
        for v in clique:
            for other in cliques:
                if other in seen or v not in other:
                    continue
                seen.add(other)
                queue.append(other)
                state = one_sum_clique(state, v, len(other), [t for t in other if t != v], strict=strict)
    if len(seen) != len(cliques):
        raise InternalInconsistency("clique tree is disconnected inside a connected component")
    return state


def _synthesize_component(h: Graph, component: list[int], strict: bool) -> BaseGraphState:
    current = set(component)
    removed: list[tuple[int, list[int], list[int]]] = []
    while True:
        split = _hole_split(h, current)
        if split is None:
            break
        removed.append(split)
        current.discard(split[0])
    state = _build_tree_of_cliques(h, current, strict)
    for x, side1, side2 in reversed(removed):
        state = construction_C(state, side1, side2, new_id=x, strict=strict)
    return state


def synthesize(h: Graph, strict: bool = True) -> SynthesisCertificate:
    """Two-index-level base graph realising ``h``, with a checked certificate.

    Components are realised separately and united. A component without
    holes is a tree of cliques: a gadget for the largest clique, then
    clique-by-clique one-sums in breadth-first order. Otherwise the smallest
    vertex X of the lexicographically first shortest hole is removed
    repeatedly until no hole is left; the removed vertices are then put back
    in reverse order with construction C on the two cliques X used to join.

    Graphs with an induced C4 have no verdict to rely on. The same
    construction is still attempted when they are collections of cliques
    with no odd hole and a two-colourable clique structure; the result is
    returned only if recomputation confirms it, else ``NotSynthesizable``.
    """
    verdict = classify(h)
    if verdict.status is Status.UNKNOWN_CONTAINS_C4 and _c4_attempt_allowed(h):
        try:
            return _synthesize(h, strict)
        except (SynthesisError, InternalInconsistency) as exc:
            log.info("construction does not realise C4-containing %r: %s", h, exc)
            raise NotSynthesizable(verdict) from None
    if verdict.status is not Status.SPG_BY_THEOREM:
        raise NotSynthesizable(verdict)
    return _synthesize(h, strict)


def _c4_attempt_allowed(h: Graph) -> bool:
    decomposition = is_collection_of_cliques(h)
    if isinstance(decomposition, InducedWitness):
        return False
    if shortest_induced_cycle(h, min_length=5, parity="odd") is not None:
        return False
    try:
        assign_parities(decomposition)
    except ParityConflict:
        return False
    return True


def _synthesize(h: Graph, strict: bool) -> SynthesisCertificate:
    if h.n == 0:
        raise SynthesisError("the empty graph has no base graph with connected endpoints")
    state = empty_state()
    for component in h.components():
        state = disjoint_union(state, _synthesize_component(h, component, strict), strict=strict)

    cert = SynthesisCertificate(
        base=state.graph,
        a=state.a,
        b=state.b,
        correspondence=tuple(state.geodesic_of[t] for t in range(h.n)),
        index_levels=state.index_levels,
        log=state.log,
    )
    if state.target_edges != frozenset(h.edges()):
        raise InternalInconsistency(f"synthesised target differs from input {h!r}")
    if cert.index_levels != 2:
        raise InternalInconsistency(f"synthesised base graph has {cert.index_levels} index levels, expected 2")
    if check_certificate(cert, h) is None:
        log.error("certificate check failed for %r; state log %r", h, state.log)
        raise InternalInconsistency(f"recomputed SPG of the synthesised base graph does not match {h!r}")
    return cert


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    certificate: SynthesisCertificate
    correspondence: dict[int, int] | None
    isomorphism: dict[int, int] | None


def verify(h: Graph, strict: bool = True) -> VerifyResult:
    """Synthesise, recompute the SPG, and confirm it is isomorphic to ``h`` two ways."""
    cert = synthesize(h, strict=strict)
    mapping = check_certificate(cert, h)
    spg = build_spg(cert.base, cert.a, cert.b)
    iso = is_isomorphic(h, spg.graph)
    return VerifyResult(mapping is not None and iso is not None and cert.index_levels == 2, cert, mapping, iso)
