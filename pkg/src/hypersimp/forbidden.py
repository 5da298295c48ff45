"""Detection of configurations that force polygon overlaps.

Minimal (length-4) basis cycles that chain into cycles again - now inside
the cycle adjacency graph, where two basis cycles are joined once per
shared bipartite edge - mark exactly the spots where convex polygons must
overlap.  A 2-connected component of that adjacency graph restricted to
minimal cycles is a forbidden cluster; every adjacency-graph cycle whose
member cycles share a common bipartite node is one forbidden
sub-hypergraph, classified by the role mix of the shared nodes.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional

from .decompose import (
    IndexedGraph,
    TopologicalBlock,
    biconnected_components,
    tight_cycle_basis_indexed,
    topological_decomposition,
)
from .model import Hypergraph, build_bipartite

Edge = tuple[str, str]


class ForbiddenClass(str, Enum):
    N_ADJACENT_BUNDLE_OF_2 = "NAdjacentBundleOf2"
    TWO_ADJACENT_BUNDLE = "TwoAdjacentBundle"
    STRANGLED_VERTEX_CYCLE = "StrangledVertexCycle"
    STRANGLED_HYPEREDGE_CYCLE = "StrangledHyperedgeCycle"
    STRANGLED_VERTEX_STAR = "StrangledVertexStar"
    STRANGLED_HYPEREDGE_STAR = "StrangledHyperedgeStar"


@dataclass(frozen=True)
class CycleAdjacencyGraph:
    """Multigraph over basis cycles: one edge per shared bipartite edge.

    ``cycle_ids`` are indices into the block basis (restricted to minimal
    cycles when ``minimal_only``); parallel entries in ``edges`` are
    meaningful, one per shared bipartite edge.
    """

    block_id: str
    cycle_ids: tuple[int, ...]
    edges: tuple[tuple[int, int, Edge], ...]
    minimal_only: bool


@dataclass(frozen=True)
class ForbiddenCluster:
    """2-connected component of the minimal-cycle adjacency graph."""

    block_id: str
    members: tuple[int, ...]  # basis indices of the member minimal cycles
    nodes: frozenset[str]
    edges: frozenset[Edge]


@dataclass(frozen=True)
class ForbiddenSubHypergraph:
    """A cycle of minimal basis cycles sharing at least one bipartite node."""

    block_id: str
    members: tuple[int, ...]  # the cycle sequence in the adjacency graph
    shared: tuple[str, ...]  # common bipartite nodes of all members
    classes: tuple[ForbiddenClass, ...]
    centers: tuple[str, ...]
    size: Optional[int]  # bundle arity (member count + 1); None otherwise


def cycle_adjacency_graph(block: TopologicalBlock, minimal_only: bool = True) -> CycleAdjacencyGraph:
    """Adjacency multigraph of the block's basis cycles.

    Cycles are adjacent once per shared bipartite edge, so a pair sharing
    two edges is joined by two parallel edges.
    """
    ids = tuple(
        i for i, c in enumerate(block.basis) if c.is_minimal or not minimal_only
    )
    by_edge: dict[Edge, list[int]] = {}
    for i in ids:
        for e in block.basis[i].edges:
            by_edge.setdefault(e, []).append(i)
    edges = []
    for e in sorted(by_edge):
        holders = sorted(by_edge[e])
        for a, b in combinations(holders, 2):
            edges.append((a, b, e))
    return CycleAdjacencyGraph(
        block_id=block.id, cycle_ids=ids, edges=tuple(edges), minimal_only=minimal_only
    )


def forbidden_clusters(block: TopologicalBlock) -> list[ForbiddenCluster]:
    """2-connected components (of two or more cycles) of the minimal-cycle
    adjacency graph.  Single shared edges between a cycle pair do not make a
    cluster; two or more parallel adjacencies or an adjacency cycle do."""
    ac = cycle_adjacency_graph(block, minimal_only=True)
    if not ac.edges:
        return []
    index = {cid: k for k, cid in enumerate(ac.cycle_ids)}
    ig = IndexedGraph(len(ac.cycle_ids), [(index[a], index[b]) for a, b, _e in ac.edges])
    clusters = []
    for comp in biconnected_components(ig):
        if len(comp) < 2:
            continue
        members = sorted({ac.cycle_ids[x] for k in comp for x in ig.edges[k]})
        nodes = frozenset().union(*(block.basis[i].node_set() for i in members))
        edges = frozenset().union(*(block.basis[i].edge_set() for i in members))
        clusters.append(
            ForbiddenCluster(
                block_id=block.id,
                members=tuple(members),
                nodes=nodes,
                edges=edges,
            )
        )
    clusters.sort(key=lambda c: c.members)
    return clusters


def classify_forbidden(
    member_count: int, shared_primal: tuple[str, ...], shared_dual: tuple[str, ...]
) -> tuple[tuple[ForbiddenClass, ...], tuple[str, ...], Optional[int]]:
    """Classify a forbidden sub-hypergraph from its shared-node role mix.

    A shared pair of primal nodes marks an adjacency bundle of hyperedges,
    a shared pair of dual nodes the bundle's dual; the pair rules win over
    the strangled classes when the shared set is mixed.  One shared node of
    each role is the star case and produces a single record carrying both
    class tags.  Returns (classes, centers, bundle arity).
    """
    if not shared_primal and not shared_dual:
        raise ValueError("a forbidden sub-hypergraph must share at least one node")
    if len(shared_primal) >= 2:
        return (
            (ForbiddenClass.TWO_ADJACENT_BUNDLE,),
            tuple(sorted(shared_primal)[:2]),
            member_count + 1,
        )
    if len(shared_dual) >= 2:
        return (
            (ForbiddenClass.N_ADJACENT_BUNDLE_OF_2,),
            tuple(sorted(shared_dual)[:2]),
            member_count + 1,
        )
    if shared_primal and shared_dual:
        return (
            (ForbiddenClass.STRANGLED_VERTEX_STAR, ForbiddenClass.STRANGLED_HYPEREDGE_STAR),
            (shared_primal[0], shared_dual[0]),
            None,
        )
    if shared_primal:
        return ((ForbiddenClass.STRANGLED_VERTEX_CYCLE,), (shared_primal[0],), None)
    return ((ForbiddenClass.STRANGLED_HYPEREDGE_CYCLE,), (shared_dual[0],), None)


def detect_forbidden(block: TopologicalBlock, cluster: ForbiddenCluster) -> list[ForbiddenSubHypergraph]:
    """Forbidden sub-hypergraphs inside one cluster.

    Searches tight cycles of the cluster's adjacency multigraph (parallel
    adjacencies count as length-2 cycles) and keeps every cycle whose member
    basis cycles share at least one common bipartite node.
    """
    members = cluster.members
    index = {cid: k for k, cid in enumerate(members)}
    member_set = set(members)
    ac = cycle_adjacency_graph(block, minimal_only=True)
    sub_edges = [
        (index[a], index[b])
        for a, b, _e in ac.edges
        if a in member_set and b in member_set
    ]
    ig = IndexedGraph(len(members), sub_edges)
    records = []
    primal = {v for v, _e in block.edges}
    for node_seq, _edge_seq in tight_cycle_basis_indexed(ig):
        seq = tuple(members[i] for i in node_seq)
        shared = frozenset.intersection(*(block.basis[i].node_set() for i in seq))
        if not shared:
            continue
        sp = tuple(sorted(x for x in shared if x in primal))
        sd = tuple(sorted(x for x in shared if x not in primal))
        classes, centers, size = classify_forbidden(len(seq), sp, sd)
        records.append(
            ForbiddenSubHypergraph(
                block_id=block.id,
                members=tuple(sorted(seq)),
                shared=tuple(sorted(shared)),
                classes=classes,
                centers=centers,
                size=size,
            )
        )
    records.sort(key=lambda r: r.members)
    return records


def block_forbidden(block: TopologicalBlock) -> tuple[list[ForbiddenCluster], list[ForbiddenSubHypergraph]]:
    """All clusters of a block together with their forbidden records."""
    clusters = forbidden_clusters(block)
    records = []
    for cluster in clusters:
        records.extend(detect_forbidden(block, cluster))
    return clusters, records


def has_forbidden(h: Hypergraph) -> bool:
    """True when any block contains at least one forbidden sub-hypergraph."""
    d = topological_decomposition(build_bipartite(h))
    for block in d.blocks:
        _clusters, records = block_forbidden(block)
        if records:
            return True
    return False


def forbidden_report(h: Hypergraph) -> dict:
    """JSON-ready forbidden-structure report, one entry per block."""
    d = topological_decomposition(build_bipartite(h))
    blocks = []
    for block in d.blocks:
        clusters, records = block_forbidden(block)
        blocks.append(
            {
                "block": block.id,
                "clusters": [
                    {
                        "cycles": [f"C{i}" for i in c.members],
                        "nodes": sorted(c.nodes),
                    }
                    for c in clusters
                ],
                "records": [
                    {
                        "classes": [cls.value for cls in r.classes],
                        "members": [f"C{i}" for i in r.members],
                        "shared": list(r.shared),
                        "centers": list(r.centers),
                        "size": r.size,
                    }
                    for r in records
                ],
            }
        )
    return {"schema_version": 1, "blocks": blocks}
