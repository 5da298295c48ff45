"""Topology-guided hypergraph decomposition, simplification and rendering."""

from .model import (
    BipartiteGraph,
    Hypergraph,
    NodeRole,
    ValidationError,
    build_bipartite,
    check_hypergraph,
    dualize,
)
from .io import FormatError, parse_hypergraph, serialize_hypergraph
from .decompose import (
    Cycle,
    TopologicalBlock,
    TopologicalDecomposition,
    TreeStructure,
    betti_numbers,
    block_decomposition,
    decomposition_report,
    entanglement,
    tight_cycle_basis,
    topological_decomposition,
)
from .forbidden import (
    CycleAdjacencyGraph,
    ForbiddenClass,
    ForbiddenCluster,
    ForbiddenSubHypergraph,
    classify_forbidden,
    cycle_adjacency_graph,
    detect_forbidden,
    forbidden_clusters,
    forbidden_report,
    has_forbidden,
)
from .planarity import (
    ContractedBlock,
    CrossingPair,
    contract_clusters,
    find_crossings,
    is_convex_polygon_planar,
    is_planar,
    is_zykov_planar,
    planarity_report,
)
from .simplify import (
    OpLog,
    OpRecord,
    PriorityContext,
    PriorityParams,
    SimplificationOp,
    SimplificationState,
    apply_collapse,
    apply_cut,
    apply_prune,
    candidate_collapses,
    candidate_cuts,
    candidate_prunes,
    priority,
    replay,
    score_candidates,
    simplify,
)
from .layout import Layout, RenderSpec, force_layout, render_svg
from .ingest import ContactRecord, ingest_contacts, ingest_friendship
from .estimators import HypergraphSimplifier, TopologicalDecomposer

__version__ = "0.1.0"
