"""Recognition of collections/trees of cliques and the C4-free SPG verdict.

A C4-free graph is a shortest path graph exactly when it is a claw-free
graph whose maximal cliques pairwise share at most one vertex and it has no
induced odd cycle of length five or more. Graphs with an induced C4 are only
refuted through structures known to be forbidden in every SPG.
"""
from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass, field, replace

from spg.graph import Graph
from spg.structure import (
    DEFAULT_WORK_BUDGET,
    InducedWitness,
    claw_c4_partner,
    find_induced,
    induced_claws,
    maximal_cliques,
    shortest_induced_cycle,
)

log = logging.getLogger(__name__)


class InternalInconsistency(RuntimeError):
    """A state the theory says cannot happen (see ``assign_parities``)."""


class ParityConflict(ValueError):
    """The clique-incidence graph has an odd cycle; ``cycle`` lists clique ids."""

    def __init__(self, cycle: list[int]):
        super().__init__(f"odd cycle in clique-incidence graph: {cycle}")
        self.cycle = cycle


@dataclass(frozen=True)
class CliqueDecomposition:
    cliques: tuple[tuple[int, ...], ...]
    # (i, j, shared vertex) for cliques i < j meeting in exactly one vertex
    shared_vertex_pairs: tuple[tuple[int, int, int], ...]
    parity: tuple[int, ...] | None = None

    def cliques_of(self, v: int) -> list[int]:
        return [i for i, c in enumerate(self.cliques) if v in c]

    def to_dict(self) -> dict:
        return {
            "cliques": [list(c) for c in self.cliques],
            "shared_vertex_pairs": [list(p) for p in self.shared_vertex_pairs],
            "parity": None if self.parity is None else list(self.parity),
        }


class Status(str, enum.Enum):
    SPG_BY_THEOREM = "SpgByTheorem"
    NOT_SPG = "NotSpg"
    UNKNOWN_CONTAINS_C4 = "UnknownContainsC4"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness: InducedWitness | None = None
    decomposition: CliqueDecomposition | None = None
    notes: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "decomposition": None if self.decomposition is None else self.decomposition.to_dict(),
            "notes": list(self.notes),
        }


def _k4e_from_cliques(g: Graph, c1: tuple[int, ...], c2: tuple[int, ...]) -> InducedWitness:
    shared = sorted(set(c1) & set(c2))[:2]
    # x misses some vertex y of c2, and that y cannot lie in c1
    for x in sorted(set(c1) - set(c2)):
        for y in sorted(set(c2) - set(c1)):
            if not g.has_edge(x, y):
                return InducedWitness("K4-e", (shared[0], shared[1], x, y))
    raise InternalInconsistency(f"cliques {c1} and {c2} share two vertices but yield no induced K4-e")


def is_collection_of_cliques(h: Graph) -> CliqueDecomposition | InducedWitness:
    """Clique decomposition of ``h``, or a claw / K4-e witness against it.

    Two maximal cliques meeting in two or more vertices always contain an
    induced K4-e; that witness is returned in place of the clique pair.
    """
    claw = find_induced(h, "claw")
    if claw is not None:
        return claw
    cliques = maximal_cliques(h)
    members = [set(c) for c in cliques]
    pairs = []
    for i in range(len(cliques)):
        for j in range(i + 1, len(cliques)):
            common = members[i] & members[j]
            if len(common) >= 2:
                return _k4e_from_cliques(h, cliques[i], cliques[j])
            if common:
                pairs.append((i, j, next(iter(common))))
    return CliqueDecomposition(tuple(cliques), tuple(pairs))


def is_tree_of_cliques(h: Graph, budget: int = DEFAULT_WORK_BUDGET) -> tuple[bool, CliqueDecomposition | InducedWitness]:
    """(True, decomposition) for a tree of cliques, else (False, witness).

    The witness is a claw, a K4-e or the shortest induced cycle of length >= 4.
    """
    result = is_collection_of_cliques(h)
    if isinstance(result, InducedWitness):
        return False, result
    hole = shortest_induced_cycle(h, min_length=4, budget=budget)
    if hole is not None:
        return False, hole
    return True, result


def assign_parities(d: CliqueDecomposition) -> CliqueDecomposition:
    """Two-colour the clique-incidence graph with parities 1 and 2.

    Breadth-first from the lowest uncoloured clique of each component, which
    gets parity 1; singleton cliques are unconstrained and get 1. Raises
    ``ParityConflict`` with an odd cycle of clique ids on failure.
    """
    k = len(d.cliques)
    nbrs: list[list[int]] = [[] for _ in range(k)]
    for i, j, _ in d.shared_vertex_pairs:
        nbrs[i].append(j)
        nbrs[j].append(i)
    parity = [0] * k
    parent = [-1] * k
    depth = [0] * k
    for root in range(k):
        if parity[root]:
            continue
        parity[root] = 1
        queue = deque([root])
        while queue:
            c = queue.popleft()
            for other in sorted(nbrs[c]):
                if not parity[other]:
                    parity[other] = 3 - parity[c]
                    parent[other] = c
                    depth[other] = depth[c] + 1
                    queue.append(other)
                elif parity[other] == parity[c]:
                    raise ParityConflict(_odd_cycle(parent, depth, c, other))
    return replace(d, parity=tuple(parity))


def _odd_cycle(parent: list[int], depth: list[int], x: int, y: int) -> list[int]:
    left, right = [x], [y]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    return left + right[-2::-1]


def unaccompanied_claw(h: Graph) -> InducedWitness | None:
    """An induced claw with no induced C4 through two of its edges."""
    for claw in induced_claws(h):
        if claw_c4_partner(h, claw) is None:
            return InducedWitness("claw", claw)
    return None


def forbidden_structures(h: Graph, budget: int = DEFAULT_WORK_BUDGET) -> list[InducedWitness]:
    """Every kind of structure that rules out (or, for C4, gates) an SPG verdict.

    One witness per kind: claw without a partner C4, K4-e, K2,3, C4, C5, and
    an odd hole of length >= 7 when the graph is C4-free.
    """
    found = []
    claw = unaccompanied_claw(h)
    if claw is not None:
        found.append(claw)
    for name in ("K4-e", "K2,3", "C4", "C5"):
        w = find_induced(h, name)
        if w is not None:
            found.append(w)
    if not any(w.pattern == "C4" for w in found):
        odd = shortest_induced_cycle(h, min_length=7, parity="odd", budget=budget)
        if odd is not None:
            found.append(odd)
    return found


def classify(h: Graph, budget: int = DEFAULT_WORK_BUDGET) -> Verdict:
    c4 = find_induced(h, "C4")
    if c4 is not None:
        for name in ("K2,3", "K4-e", "C5"):
            w = find_induced(h, name)
            if w is not None:
                return Verdict(Status.NOT_SPG, w)
        claw = unaccompanied_claw(h)
        if claw is not None:
            return Verdict(Status.NOT_SPG, claw)
        return Verdict(Status.UNKNOWN_CONTAINS_C4, c4, notes=("contains an induced C4; no known refutation applies",))

    result = is_collection_of_cliques(h)
    if isinstance(result, InducedWitness):
        return Verdict(Status.NOT_SPG, result)
    hole = shortest_induced_cycle(h, min_length=5, parity="odd", budget=budget)
    if hole is not None:
        return Verdict(Status.NOT_SPG, hole)
    try:
        decomposition = assign_parities(result)
    except ParityConflict as exc:
        log.error("parity assignment failed on a C4-free odd-hole-free collection of cliques: %r (%s)", h, exc)
        raise InternalInconsistency(
            f"clique-incidence graph is not bipartite for {h!r}: {exc.cycle}"
        ) from exc
    return Verdict(Status.SPG_BY_THEOREM, decomposition=decomposition)
