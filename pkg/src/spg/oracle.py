"""Exhaustive ground truth for small instances.

``exhaustive_search`` computes the shortest path graph of every connected
base graph up to a vertex bound and every endpoint pair, and catalogs the
results by canonical form. ``property_suite`` then runs the structural
facts known to hold in every SPG over the catalog.
"""
from __future__ import annotations

import json
import logging
import os
import random
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path

from spg.classifier import (
    InternalInconsistency,
    Status,
    classify,
    is_collection_of_cliques,
    unaccompanied_claw,
)
from spg.formats import graph_from_dict, graph_to_dict
from spg.geodesics import DEFAULT_GEODESIC_CAP, GeodesicCapExceeded, SpgGraph, build_spg
from spg.graph import Graph, iter_bits
from spg.isomorphism import canonical_form, canonical_key, is_isomorphic
from spg.structure import (
    InducedWitness,
    claw_c4_partner,
    find_induced,
    induced_claws,
    iter_induced,
    maximal_cliques,
    shortest_induced_cycle,
)
from spg.synthesis import (
    BaseGraphState,
    disjoint_union,
    extend_distance,
    state_from_base,
    verify,
)

log = logging.getLogger(__name__)


# -- small graph generation ------------------------------------------------------


@lru_cache(maxsize=None)
def _graphs(n: int, connected: bool) -> tuple[Graph, ...]:
    if n == 0:
        return () if connected else (Graph(0),)
    if n == 1:
        return (Graph(1),)
    found: dict[str, Graph] = {}
    for g in _graphs(n - 1, connected):
        masks = g.adj
        for subset in range(1 if connected else 0, 1 << (n - 1)):
            adj = [m | (((subset >> v) & 1) << (n - 1)) for v, m in enumerate(masks)] + [subset]
            h = Graph.from_masks(adj)
            key = canonical_key(h)
            if key not in found:
                found[key] = canonical_form(h)
    return tuple(found[k] for k in sorted(found))


def all_graphs(n: int) -> tuple[Graph, ...]:
    """One canonical representative of every graph on ``n`` vertices.

    Built by adding a vertex with every possible neighbourhood to each graph
    on ``n - 1`` vertices and keeping one graph per canonical key.
    """
    return _graphs(n, False)


def connected_graphs(n: int) -> tuple[Graph, ...]:
    """Like ``all_graphs`` but connected only (every connected graph has a non-cut vertex)."""
    return _graphs(n, True)


# -- catalog ------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    base: Graph
    a: int
    b: int

    def spg(self, cap: int = DEFAULT_GEODESIC_CAP) -> SpgGraph:
        return build_spg(self.base, self.a, self.b, cap)

    def to_record(self) -> dict:
        return {"key": self.key, "base": graph_to_dict(self.base), "a": self.a, "b": self.b}


@dataclass
class SpgCatalog:
    entries: dict[str, CatalogEntry] = field(default_factory=dict)
    max_base_vertices: int = 0
    geodesic_cap: int = DEFAULT_GEODESIC_CAP
    exclusions: list[dict] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, h: Graph) -> bool:
        return canonical_key(h) in self.entries

    def lookup(self, h: Graph) -> CatalogEntry | None:
        return self.entries.get(canonical_key(h))

    def graphs(self) -> list[Graph]:
        return [canonical_form(self.entries[k].spg().graph) for k in sorted(self.entries)]

    def sorted_entries(self) -> list[CatalogEntry]:
        return [self.entries[k] for k in sorted(self.entries)]

    # one JSON record per line: entries, exclusions and "completed order" markers
    @classmethod
    def load(cls, path: str | os.PathLike) -> SpgCatalog:
        cat = cls()
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ValueError(f"{path}:{lineno}: bad catalog record: {exc}") from None
                if "completed_order" in rec:
                    cat.max_base_vertices = max(cat.max_base_vertices, rec["completed_order"])
                    cat.geodesic_cap = rec.get("geodesic_cap", cat.geodesic_cap)
                elif "excluded" in rec:
                    cat.exclusions.append(rec["excluded"])
                else:
                    entry = CatalogEntry(rec["key"], graph_from_dict(rec["base"]), rec["a"], rec["b"])
                    cat.entries.setdefault(entry.key, entry)
        return cat


def _spgs_of_base(args: tuple[Graph, int]) -> list[tuple[int, int, str | None, str | None]]:
    base, cap = args
    out = []
    for a, b in combinations(range(base.n), 2):
        try:
            spg = build_spg(base, a, b, cap)
        except GeodesicCapExceeded as exc:
            out.append((a, b, None, str(exc)))
            continue
        out.append((a, b, canonical_key(spg.graph), None))
    return out


def exhaustive_search(
    max_n: int,
    cap: int = DEFAULT_GEODESIC_CAP,
    path: str | os.PathLike | None = None,
    workers: int | None = None,
) -> SpgCatalog:
    """Catalog the SPGs of all connected base graphs with at most ``max_n`` vertices.

    Endpoint pairs are unordered: reversing every geodesic maps S(G, a, b)
    onto S(G, b, a). With ``path`` the catalog is loaded first and only the
    missing orders are computed and appended. ``workers > 1`` fans base
    graphs out to a process pool; results are merged in a fixed order.
    """
    if max_n > 8:
        log.warning("exhaustive search at max_n=%d will be slow", max_n)
    catalog = SpgCatalog(geodesic_cap=cap)
    if path is not None and Path(path).exists():
        catalog = SpgCatalog.load(path)
    start = catalog.max_base_vertices + 1
    sink = open(path, "a") if path is not None else None
    try:
        for n in range(max(start, 1), max_n + 1):
            bases = connected_graphs(n)
            jobs = [(g, cap) for g in bases]
            if workers and workers > 1 and len(jobs) > 50:
                with ProcessPoolExecutor(workers) as pool:
                    results = list(pool.map(_spgs_of_base, jobs, chunksize=16))
            else:
                results = [_spgs_of_base(job) for job in jobs]
            for base, rows in zip(bases, results):
                for a, b, key, problem in rows:
                    if key is None:
                        rec = {"base": graph_to_dict(base), "a": a, "b": b, "reason": problem}
                        catalog.exclusions.append(rec)
                        if sink:
                            sink.write(json.dumps({"excluded": rec}) + "\n")
                    elif key not in catalog.entries:
                        entry = CatalogEntry(key, base, a, b)
                        catalog.entries[key] = entry
                        if sink:
                            sink.write(json.dumps(entry.to_record()) + "\n")
            catalog.max_base_vertices = n
            if sink:
                sink.write(json.dumps({"completed_order": n, "geodesic_cap": cap}) + "\n")
                sink.flush()
    finally:
        if sink:
            sink.close()
    return catalog


# -- property suite --------------------------------------------------------------------


@dataclass
class CheckResult:
    check: str
    status: str  # "pass" or "fail"
    witness: dict | None = None
    checked: int = 0

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "witness": self.witness, "checked": self.checked}


Check = Callable[[SpgGraph], "dict | None"]


def _no_pattern(name: str) -> Check:
    def check(spg: SpgGraph) -> dict | None:
        w = find_induced(spg.graph, name)
        return None if w is None else w.to_dict()

    return check


def _claw_has_c4(spg: SpgGraph) -> dict | None:
    h = spg.graph
    for claw in induced_claws(h):
        if claw_c4_partner(h, claw) is None:
            return {"claw": list(claw)}
    return None


def _odd_hole_has_c4(spg: SpgGraph) -> dict | None:
    h = spg.graph
    odd = shortest_induced_cycle(h, min_length=7, parity="odd")
    if odd is not None and find_induced(h, "C4") is None:
        return {"odd_hole": list(odd.vertices)}
    return None


def _triangle_dichotomy(spg: SpgGraph) -> dict | None:
    h = spg.graph
    for tri in iter_induced(h, "C3"):
        if list(tri) != sorted(tri):
            continue
        for u in h.vertices():
            if u in tri:
                continue
            # adjacent to one triangle vertex means adjacent to both others or neither
            if sum(h.has_edge(u, t) for t in tri) == 2:
                return {"triangle": list(tri), "vertex": u}
    return None


def _clique_neighbors(spg: SpgGraph) -> dict | None:
    h = spg.graph
    for clique in maximal_cliques(h):
        mask = sum(1 << v for v in clique)
        for u in h.vertices():
            if u not in clique and (h.adj[u] & mask).bit_count() > 1:
                return {"clique": list(clique), "vertex": u}
    return None


def _clique_pairs(spg: SpgGraph) -> dict | None:
    h = spg.graph
    cliques = maximal_cliques(h)
    for c1, c2 in combinations(cliques, 2):
        common = set(c1) & set(c2)
        if len(common) >= 2:
            return {"cliques": [list(c1), list(c2)], "shared": sorted(common)}
        if not common:
            cross = [(x, y) for x in c1 for y in c2 if h.has_edge(x, y)]
            xs, ys = [x for x, _ in cross], [y for _, y in cross]
            if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
                return {"cliques": [list(c1), list(c2)], "cross_edges": cross}
    return None


def _clique_single_index(spg: SpgGraph) -> dict | None:
    for clique in maximal_cliques(spg.graph):
        labels = {spg.label(x, y) for x, y in combinations(clique, 2)}
        if len(labels) > 1:
            return {"clique": list(clique), "labels": sorted(labels)}
    return None


def _shared_distinct_index(spg: SpgGraph) -> dict | None:
    cliques = [c for c in maximal_cliques(spg.graph) if len(c) >= 2]
    for c1, c2 in combinations(cliques, 2):
        if len(set(c1) & set(c2)) == 1:
            if spg.label(c1[0], c1[1]) == spg.label(c2[0], c2[1]):
                return {"cliques": [list(c1), list(c2)]}
    return None


def _c4_alternation(spg: SpgGraph) -> dict | None:
    for cyc in iter_induced(spg.graph, "C4"):
        labels = [spg.label(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
        if not (labels[0] == labels[2] and labels[1] == labels[3] and labels[0] != labels[1]):
            return {"cycle": list(cyc), "labels": labels}
    return None


def _common_neighbors(spg: SpgGraph) -> dict | None:
    h = spg.graph
    for u, w in combinations(h.vertices(), 2):
        if h.has_edge(u, w):
            continue
        common = list(iter_bits(h.adj[u] & h.adj[w]))
        if len(common) > 2:
            return {"pair": [u, w], "common": common}
        if len(common) == 2 and not InducedWitness("C4", (u, common[0], w, common[1])).check(h):
            return {"pair": [u, w], "common": common}
    return None


def _c4_free_is_collection(spg: SpgGraph) -> dict | None:
    h = spg.graph
    if find_induced(h, "C4") is not None:
        return None
    res = is_collection_of_cliques(h)
    if isinstance(res, InducedWitness):
        return res.to_dict()
    hole = shortest_induced_cycle(h, min_length=5, parity="odd")
    return None if hole is None else hole.to_dict()


def _c4_free_classifies(spg: SpgGraph) -> dict | None:
    h = spg.graph
    if find_induced(h, "C4") is not None:
        return None
    try:
        verdict = classify(h)
    except InternalInconsistency as exc:
        return {"internal_inconsistency": str(exc)}
    return None if verdict.status is Status.SPG_BY_THEOREM else verdict.to_dict()


def _reversal(spg: SpgGraph) -> dict | None:
    back = build_spg(spg.source, spg.b, spg.a)
    return None if is_isomorphic(spg.graph, back.graph) is not None else {"a": spg.a, "b": spg.b}


CHECKS: dict[str, Check] = {
    "reversal-symmetry": _reversal,
    "no-induced-C5": _no_pattern("C5"),
    "no-induced-K4-e": _no_pattern("K4-e"),
    "no-induced-K2,3": _no_pattern("K2,3"),
    "claw-has-partner-C4": _claw_has_c4,
    "odd-hole-has-C4": _odd_hole_has_c4,
    "triangle-dichotomy": _triangle_dichotomy,
    "clique-neighbors-at-most-one": _clique_neighbors,
    "clique-pair-trichotomy": _clique_pairs,
    "clique-single-difference-index": _clique_single_index,
    "shared-vertex-cliques-distinct-index": _shared_distinct_index,
    "c4-label-alternation": _c4_alternation,
    "common-neighbors": _common_neighbors,
    "c4-free-is-collection-of-cliques": _c4_free_is_collection,
    "c4-free-classified-spg": _c4_free_classifies,
}


def property_suite(catalog: SpgCatalog, checks: dict[str, Check] | None = None) -> list[CheckResult]:
    """Run each structural check over every catalog entry; one result per check."""
    checks = CHECKS if checks is None else checks
    results = {name: CheckResult(name, "pass") for name in checks}
    results["entry-reverifies"] = CheckResult("entry-reverifies", "pass")
    for entry in catalog.sorted_entries():
        spg = entry.spg(catalog.geodesic_cap)
        res = results["entry-reverifies"]
        res.checked += 1
        if res.status == "pass" and canonical_key(spg.graph) != entry.key:
            res.status, res.witness = "fail", {"key": entry.key}
        for name, check in checks.items():
            res = results[name]
            res.checked += 1
            if res.status == "fail":
                continue
            found = check(spg)
            if found is not None:
                res.status = "fail"
                res.witness = {"key": entry.key, **found}
    return list(results.values())


def report_json(results: list[CheckResult]) -> str:
    return json.dumps([r.to_dict() for r in results], indent=2)


# -- invariance checks ------------------------------------------------------------------


def _realises(state: BaseGraphState, expected: Graph) -> bool:
    spg = build_spg(state.graph, state.a, state.b)
    return is_isomorphic(spg.graph, expected) is not None


def check_extend_distance(catalog: SpgCatalog, samples: int = 50, seed: int = 0, extra: int = 3) -> list[dict]:
    """Extend random witnesses by up to ``extra`` and confirm the SPG survives. Returns failures."""
    rng = random.Random(seed)
    entries = catalog.sorted_entries()
    failures = []
    for _ in range(samples):
        entry = rng.choice(entries)
        state = state_from_base(entry.base, entry.a, entry.b)
        target = rng.randint(state.distance, state.distance + extra)
        extended = extend_distance(state, target, strict=False)
        if not _realises(extended, entry.spg().graph):
            failures.append({"key": entry.key, "n_prime": target})
    return failures


def check_disjoint_union(catalog: SpgCatalog, samples: int = 50, seed: int = 0) -> list[dict]:
    """Unite random pairs of witnesses and confirm the union SPG. Returns failures."""
    from spg.graph import disjoint_union as graph_union

    rng = random.Random(seed)
    entries = catalog.sorted_entries()
    failures = []
    for _ in range(samples):
        e1, e2 = rng.choice(entries), rng.choice(entries)
        merged = disjoint_union(state_from_base(e1.base, e1.a, e1.b), state_from_base(e2.base, e2.a, e2.b), strict=False)
        if not _realises(merged, graph_union(e1.spg().graph, e2.spg().graph)):
            failures.append({"keys": [e1.key, e2.key]})
    return failures


# -- classification completeness and refutation ----------------------------------------------


@dataclass
class CompletenessReport:
    graphs_checked: int = 0
    c4_free: int = 0
    in_catalog: int = 0
    synthesized: int = 0
    failures: list[dict] = field(default_factory=list)


def classification_completeness(catalog: SpgCatalog, max_order: int) -> CompletenessReport:
    """Compare classify() with the catalog on every C4-free graph up to ``max_order`` vertices.

    Catalog membership without an SPG verdict is a failure. An SPG verdict
    without catalog membership falls back to synthesis, failing only if the
    synthesized base graph does not verify.
    """
    report = CompletenessReport()
    for n in range(1, max_order + 1):
        for g in all_graphs(n):
            report.graphs_checked += 1
            if find_induced(g, "C4") is not None:
                continue
            report.c4_free += 1
            try:
                verdict = classify(g)
            except InternalInconsistency as exc:
                report.failures.append({"graph": graph_to_dict(g), "error": str(exc)})
                continue
            cataloged = g in catalog
            report.in_catalog += cataloged
            is_spg = verdict.status is Status.SPG_BY_THEOREM
            if cataloged and not is_spg:
                report.failures.append({"graph": graph_to_dict(g), "verdict": verdict.to_dict()})
            elif is_spg and not cataloged:
                report.synthesized += 1
                if not verify(g).passed:
                    report.failures.append({"graph": graph_to_dict(g), "error": "synthesis did not verify"})
    return report


@dataclass(frozen=True)
class Refutation:
    kind: str  # "RealizedBy" | "AbsentFromCatalog" | "RefutedByForbiddenStructure"
    entry: CatalogEntry | None = None
    witness: InducedWitness | None = None
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "entry": None if self.entry is None else self.entry.to_record(),
            "witness": None if self.witness is None else self.witness.to_dict(),
            "note": self.note,
        }


def refute(h: Graph, catalog: SpgCatalog) -> Refutation:
    entry = catalog.lookup(h)
    if entry is not None:
        return Refutation("RealizedBy", entry=entry)
    verdict = classify(h)
    if verdict.status is Status.NOT_SPG:
        return Refutation("RefutedByForbiddenStructure", witness=verdict.witness)
    return Refutation(
        "AbsentFromCatalog",
        note=f"not realised by any connected base graph on at most {catalog.max_base_vertices} vertices; "
        "this is not a proof that it is not an SPG",
    )


def iter_catalog_spgs(catalog: SpgCatalog) -> Iterator[tuple[CatalogEntry, SpgGraph]]:
    for entry in catalog.sorted_entries():
        yield entry, entry.spg(catalog.geodesic_cap)


__all__ = [
    "CHECKS",
    "CatalogEntry",
    "CheckResult",
    "CompletenessReport",
    "Refutation",
    "SpgCatalog",
    "all_graphs",
    "check_disjoint_union",
    "check_extend_distance",
    "classification_completeness",
    "connected_graphs",
    "exhaustive_search",
    "iter_catalog_spgs",
    "property_suite",
    "refute",
    "report_json",
    "unaccompanied_claw",
]
