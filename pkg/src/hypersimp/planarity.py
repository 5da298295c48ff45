"""Planarity decisions, cluster contraction and crossing identification.

Planarity testing and Kuratowski witness extraction are delegated to
networkx's left-right test.  Crossing identification runs a planarization
heuristic: greedily delete low-betweenness edges out of Kuratowski
witnesses until planar, re-add deletions that turned out harmless, then
re-insert the remaining edges through shortest face paths of the planar
embedding, trying several insertion orders and keeping the one with the
fewest crossings.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import networkx as nx

from .decompose import TopologicalBlock, topological_decomposition
from .forbidden import ForbiddenCluster, block_forbidden
from .model import BipartiteGraph, Hypergraph, build_bipartite

Edge = tuple[str, str]


def _as_nx(graph) -> nx.Graph:
    if isinstance(graph, nx.Graph):
        g = nx.Graph()
        g.add_nodes_from(sorted(graph.nodes, key=str))
        g.add_edges_from(sorted((tuple(sorted(e, key=str)) for e in graph.edges), key=str))
        return g
    if isinstance(graph, BipartiteGraph):
        g = nx.Graph()
        g.add_nodes_from(graph.node_order())
        g.add_edges_from(graph.edges)
        return g
    if isinstance(graph, ContractedBlock):
        return _as_nx(graph.graph)
    raise TypeError(f"cannot interpret {type(graph).__name__} as a graph")


def is_planar(graph, witness: bool = False):
    """Planarity of a plain graph or a bipartite representation.

    Returns ``(True, None)`` for planar inputs.  For non-planar inputs
    returns ``(False, edges)`` where ``edges`` is a Kuratowski witness (a
    K5 or K33 subdivision) when ``witness`` is requested, else ``(False,
    None)``.  A density fast path rejects graphs with too many edges for
    any plane embedding.
    """
    g = _as_nx(graph)
    n, m = g.number_of_nodes(), g.number_of_edges()
    if not witness and n >= 3:
        limit = 2 * n - 4 if isinstance(graph, BipartiteGraph) else 3 * n - 6
        if m > limit:
            return False, None
    ok, _cert = nx.check_planarity(g, counterexample=False)
    if ok:
        return True, None
    if not witness:
        return False, None
    sub = nx.algorithms.planarity.get_counterexample(g)
    return False, sorted(tuple(sorted(e, key=str)) for e in sub.edges)


def is_zykov_planar(h: Hypergraph) -> bool:
    """True when the bipartite representation has a plane embedding."""
    ok, _ = is_planar(build_bipartite(h))
    return ok


def is_convex_polygon_planar(h: Hypergraph) -> bool:
    """True when the hypergraph can be drawn with non-overlapping convex
    polygons: planar bipartite representation and no forbidden structure."""
    from .forbidden import has_forbidden

    return is_zykov_planar(h) and not has_forbidden(h)


# ---------------------------------------------------------------------------
# cluster contraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ContractedBlock:
    """Block with each forbidden cluster group replaced by one supernode.

    Overlapping clusters are merged into a single contraction group, so
    supernodes never share nodes.  ``graph`` may be non-bipartite.
    ``edge_origin`` maps every contracted edge back to a representative
    original bipartite edge.
    """

    block_id: str
    graph: nx.Graph
    supernode_members: dict[str, frozenset[str]]
    node_map: dict[str, str]
    edge_origin: dict[frozenset, Edge]

    def original_edge(self, a: str, b: str) -> Optional[Edge]:
        return self.edge_origin.get(frozenset((a, b)))


def contract_clusters(block: TopologicalBlock, clusters: Sequence[ForbiddenCluster]) -> ContractedBlock:
    """Replace each cluster group with a supernode, keeping external edges.

    Clusters with overlapping node sets fall into one group.  Parallel
    contracted edges collapse to one (a representative original edge is
    retained) and intra-group edges vanish.
    """
    groups: list[set[str]] = []
    for cluster in clusters:
        merged = set(cluster.nodes)
        keep = []
        for g in groups:
            if g & merged:
                merged |= g
            else:
                keep.append(g)
        keep.append(merged)
        groups = keep
    groups.sort(key=min)

    node_map: dict[str, str] = {}
    supernode_members: dict[str, frozenset[str]] = {}
    for i, g in enumerate(groups):
        name = f"S{i}"
        supernode_members[name] = frozenset(g)
        for x in g:
            node_map[x] = name

    graph = nx.Graph()
    for x in sorted(block.nodes):
        graph.add_node(node_map.get(x, x))
    edge_origin: dict[frozenset, Edge] = {}
    for v, e in block.edges:
        a, b = node_map.get(v, v), node_map.get(e, e)
        if a == b:
            continue
        key = frozenset((a, b))
        if key not in edge_origin:
            edge_origin[key] = (v, e)
            graph.add_edge(a, b)
    return ContractedBlock(
        block_id=block.id,
        graph=graph,
        supernode_members=supernode_members,
        node_map=node_map,
        edge_origin=edge_origin,
    )


# ---------------------------------------------------------------------------
# crossing identification via planarize-and-reinsert
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CrossingPair:
    """Two edges that cross in the best embedding found."""

    edge_a: tuple
    edge_b: tuple
    permutation_index: int


def find_crossings(graph, seed: int = 42, trials: int = 10) -> list[CrossingPair]:
    """Crossing pairs of the best (fewest-crossings) embedding found.

    Empty exactly when the graph is planar.  The edge re-insertion phase is
    repeated for ``trials`` seeded permutations of the deleted-edge order
    and the best result is kept (ties: lowest permutation index).
    """
    base = _as_nx(graph)
    ok, _ = nx.check_planarity(base)
    if ok:
        return []
    planar_part, removed = _max_planar_subgraph(base)
    best: tuple[int, int, list[CrossingPair]] | None = None
    for t in range(trials):
        rng = random.Random(seed * 1000003 + t)
        order = list(removed)
        rng.shuffle(order)
        pairs = _reinsert_all(planar_part.copy(), order, t)
        if best is None or len(pairs) < best[0]:
            best = (len(pairs), t, pairs)
    assert best is not None
    return best[2]


def _max_planar_subgraph(g: nx.Graph) -> tuple[nx.Graph, list[tuple]]:
    """Greedy planar subgraph: repeatedly delete the lowest-betweenness edge
    of a Kuratowski witness, then re-add any deletions that stayed planar."""
    work = g.copy()
    betweenness = nx.edge_betweenness_centrality(g, normalized=True)

    def rank(e):
        key = e if e in betweenness else (e[1], e[0])
        return (betweenness.get(key, 0.0), e)

    removed: list[tuple] = []
    while True:
        ok, _ = nx.check_planarity(work)
        if ok:
            break
        witness = nx.algorithms.planarity.get_counterexample(work)
        victim = min(
            (tuple(sorted(e, key=str)) for e in witness.edges), key=rank
        )
        work.remove_edge(*victim)
        removed.append(victim)
    kept: list[tuple] = []
    for e in sorted(removed):
        work.add_edge(*e)
        ok, _ = nx.check_planarity(work)
        if ok:
            continue
        work.remove_edge(*e)
        kept.append(e)
    return work, kept


def _reinsert_all(planar_part: nx.Graph, order: Iterable[tuple], permutation_index: int) -> list[CrossingPair]:
    """Insert the removed edges one by one through shortest face paths.

    Each crossing subdivides the crossed edge with a dummy node so that the
    working graph stays planar; dummy segments remember the original edge
    they belong to, so crossings with previously inserted edges resolve to
    original edge pairs.
    """
    origin: dict[frozenset, tuple] = {
        frozenset(e): tuple(sorted(e, key=str)) for e in planar_part.edges
    }
    pairs: list[CrossingPair] = []
    counter = 0
    for u, v in order:
        crossed = _route_edge(planar_part, u, v)
        segments = [u]
        for a, b in crossed:
            pairs.append(
                CrossingPair(
                    edge_a=(u, v),
                    edge_b=origin[frozenset((a, b))],
                    permutation_index=permutation_index,
                )
            )
            dummy = f"__x{permutation_index}_{counter}"
            counter += 1
            orig = origin.pop(frozenset((a, b)))
            planar_part.remove_edge(a, b)
            planar_part.add_edge(a, dummy)
            planar_part.add_edge(dummy, b)
            origin[frozenset((a, dummy))] = orig
            origin[frozenset((dummy, b))] = orig
            segments.append(dummy)
        segments.append(v)
        for a, b in zip(segments, segments[1:]):
            planar_part.add_edge(a, b)
            origin[frozenset((a, b))] = (u, v)
    return pairs


def _route_edge(planar_part: nx.Graph, u: str, v: str) -> list[tuple]:
    """Edges crossed by a shortest dual (face-to-face) route from u to v."""
    if planar_part.degree(u) == 0 or planar_part.degree(v) == 0:
        return []  # a free endpoint can be placed without crossing anything
    ok, emb = nx.check_planarity(planar_part)
    assert ok, "re-insertion must keep the working graph planar"
    face_of: dict[tuple, int] = {}
    n_faces = 0
    for a in sorted(emb.nodes, key=str):
        for b in sorted(emb[a], key=str):
            if (a, b) in face_of:
                continue
            marked: set = set()
            emb.traverse_face(a, b, mark_half_edges=marked)
            for half in marked:
                face_of[half] = n_faces
            n_faces += 1

    def faces_at(x) -> list[int]:
        return sorted({face_of[(x, y)] for y in emb[x]})

    # faces adjacent across each undirected edge
    boundary: dict[int, list[tuple]] = {}
    for a, b in planar_part.edges:
        for half in ((a, b), (b, a)):
            boundary.setdefault(face_of[half], []).append(half)

    targets = set(faces_at(v))
    start = faces_at(u)
    hit = [f for f in start if f in targets]
    if hit:
        return []  # shared face: insert without crossings
    from collections import deque

    parent: dict[int, tuple[int, tuple]] = {f: (-1, ()) for f in start}
    q = deque(start)
    while q:
        f = q.popleft()
        for a, b in sorted(boundary.get(f, ()), key=str):
            if a == u or b == u or a == v or b == v:
                continue  # never cross an edge sharing an endpoint
            g_face = face_of[(b, a)]
            if g_face in parent:
                continue
            parent[g_face] = (f, tuple(sorted((a, b), key=str)))
            if g_face in targets:
                crossed = []
                cur = g_face
                while parent[cur][0] != -1:
                    crossed.append(parent[cur][1])
                    cur = parent[cur][0]
                crossed.reverse()
                return crossed
            q.append(g_face)
    raise AssertionError("face routing failed to reach the target node")


# ---------------------------------------------------------------------------
# reporting
# ---------------------------------------------------------------------------

def planarity_report(h: Hypergraph, seed: int = 42) -> dict:
    """JSON-ready planarity report for a hypergraph."""
    g = build_bipartite(h)
    zykov, witness = is_planar(g, witness=True)
    d = topological_decomposition(g)
    any_forbidden = False
    crossings = []
    for block in d.blocks:
        clusters, records = block_forbidden(block)
        if records:
            any_forbidden = True
        contracted = contract_clusters(block, clusters)
        for pair in find_crossings(contracted.graph, seed=seed):
            ea = contracted.original_edge(*pair.edge_a)
            eb = contracted.original_edge(*pair.edge_b)
            crossings.append(
                {
                    "block": block.id,
                    "edges": [list(ea) if ea else list(pair.edge_a),
                              list(eb) if eb else list(pair.edge_b)],
                }
            )
    report = {
        "schema_version": 1,
        "zykov": zykov,
        "convex": zykov and not any_forbidden,
        "crossings": crossings,
    }
    if witness is not None:
        report["witness_edges"] = [list(e) for e in witness]
    return report
