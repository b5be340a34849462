"""Shortest path graphs: the reconfiguration graph of all shortest (a, b)-paths."""
from spg.classifier import (
    CliqueDecomposition,
    InternalInconsistency,
    Status,
    Verdict,
    assign_parities,
    classify,
    forbidden_structures,
    is_collection_of_cliques,
    is_tree_of_cliques,
)
from spg.geodesics import (
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
from spg.graph import Graph, induced_subgraph
from spg.isomorphism import canonical_form, canonical_key, is_isomorphic
from spg.structure import BudgetExhausted, InducedWitness, find_induced, maximal_cliques, shortest_induced_cycle
from spg.synthesis import (
    BaseGraphState,
    NotSynthesizable,
    SynthesisCertificate,
    SynthesisError,
    synth_complete,
    synthesize,
    verify,
)

__all__ = [
    "BaseGraphState",
    "BudgetExhausted",
    "CliqueDecomposition",
    "GeodesicCapExceeded",
    "Graph",
    "InducedWitness",
    "InternalInconsistency",
    "NotSynthesizable",
    "SpgGraph",
    "Status",
    "SynthesisCertificate",
    "SynthesisError",
    "Unreachable",
    "Verdict",
    "assign_parities",
    "bfs_layers",
    "build_spg",
    "canonical_form",
    "canonical_key",
    "classify",
    "count_geodesics",
    "diff_indices",
    "enumerate_geodesics",
    "find_induced",
    "forbidden_structures",
    "induced_subgraph",
    "is_collection_of_cliques",
    "is_isomorphic",
    "is_tree_of_cliques",
    "maximal_cliques",
    "shortest_induced_cycle",
    "synth_complete",
    "synthesize",
    "unique_vertex_geodesic",
    "verify",
]
