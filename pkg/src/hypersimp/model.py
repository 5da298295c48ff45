"""Hypergraph model and its bipartite incidence representation.

Vertices and hyperedges are referred to by opaque string ids drawn from
disjoint namespaces.  The bipartite (Koenig) representation has one node
per vertex, one node per hyperedge and one edge per incidence pair.  A
hypergraph and its dual share the same bipartite graph; dualization only
swaps the node roles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping


class ValidationError(ValueError):
    """A hypergraph or bipartite graph violates a structural invariant."""


class NodeRole(Enum):
    PRIMAL = "primal"
    DUAL = "dual"


@dataclass(frozen=True, eq=True)
class Hypergraph:
    """Immutable hypergraph: a vertex set plus named, non-empty vertex subsets.

    Parallel hyperedges (distinct ids over identical vertex sets) are kept;
    they are meaningful because every such pair forms a minimal cycle in the
    bipartite representation.
    """

    vertices: frozenset[str]
    hyperedges: dict[str, frozenset[str]]
    labels: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        verts = frozenset(str(v) for v in self.vertices)
        raw = self.hyperedges.items() if isinstance(self.hyperedges, Mapping) else self.hyperedges
        edges = {str(e): frozenset(str(v) for v in members) for e, members in raw}
        edges = dict(sorted(edges.items()))
        labels = dict(sorted((str(k), str(v)) for k, v in (self.labels or {}).items()))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "hyperedges", edges)
        object.__setattr__(self, "labels", labels)
        for eid, members in edges.items():
            if not members:
                raise ValidationError(f"hyperedge {eid!r} is empty")
            unknown = members - verts
            if unknown:
                raise ValidationError(
                    f"hyperedge {eid!r} references unknown vertex {min(unknown)!r}"
                )
        overlap = verts & edges.keys()
        if overlap:
            raise ValidationError(f"id {min(overlap)!r} used as both vertex and hyperedge")

    # -- basic measures ----------------------------------------------------

    def degree(self, v: str) -> int:
        """Number of hyperedges containing vertex ``v``."""
        if v not in self.vertices:
            raise ValidationError(f"unknown vertex {v!r}")
        return sum(1 for members in self.hyperedges.values() if v in members)

    def cardinality(self, e: str) -> int:
        """Number of vertices in hyperedge ``e``."""
        try:
            return len(self.hyperedges[e])
        except KeyError:
            raise ValidationError(f"unknown hyperedge {e!r}") from None

    def memberships(self) -> dict[str, frozenset[str]]:
        """Map every vertex to the set of hyperedges containing it."""
        out: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e, members in self.hyperedges.items():
            for v in members:
                out[v].add(e)
        return {v: frozenset(es) for v, es in out.items()}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_hyperedges(self) -> int:
        return len(self.hyperedges)

    @property
    def element_count(self) -> int:
        """Total number of elements (vertices plus hyperedges)."""
        return len(self.vertices) + len(self.hyperedges)

    @property
    def incidence_count(self) -> int:
        """Total number of incidence pairs, equal to the bipartite edge count."""
        return sum(len(m) for m in self.hyperedges.values())


def check_hypergraph(h: Hypergraph) -> Hypergraph:
    """Validate input for the estimator-style APIs.

    Accepts an already-constructed :class:`Hypergraph` (which is valid by
    construction) and rejects anything else with a clear message.
    """
    if not isinstance(h, Hypergraph):
        raise TypeError(f"expected a Hypergraph, got {type(h).__name__}")
    return h


def dualize(h: Hypergraph) -> Hypergraph:
    """Swap the roles of vertices and hyperedges.

    The dual keeps the original id strings: hyperedge ids become vertex ids
    and vice versa, so ``dualize(dualize(h)) == h`` and both hypergraphs map
    to the identical bipartite graph up to a role swap.  A vertex contained
    in no hyperedge has no dual counterpart (its dual hyperedge would be
    empty), so such inputs are rejected.
    """
    membership: dict[str, set[str]] = {v: set() for v in h.vertices}
    for e, members in h.hyperedges.items():
        for v in members:
            membership[v].add(e)
    for v, es in membership.items():
        if not es:
            raise ValidationError(
                f"vertex {v!r} is isolated; the dual hypergraph is undefined"
            )
    return Hypergraph(
        vertices=frozenset(h.hyperedges),
        hyperedges={v: frozenset(es) for v, es in membership.items()},
        labels=dict(h.labels),
    )


@dataclass(frozen=True, eq=True)
class BipartiteGraph:
    """Bipartite incidence graph shared by a hypergraph and its dual.

    ``edges`` always stores ``(primal node, dual node)`` pairs in sorted
    order, which also fixes the edge indexing used by the decomposition
    algorithms.
    """

    primal_nodes: tuple[str, ...]
    dual_nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        primal = tuple(sorted(self.primal_nodes))
        dual = tuple(sorted(self.dual_nodes))
        edges = tuple(sorted((str(a), str(b)) for a, b in self.edges))
        object.__setattr__(self, "primal_nodes", primal)
        object.__setattr__(self, "dual_nodes", dual)
        object.__setattr__(self, "edges", edges)
        pset, dset = set(primal), set(dual)
        if pset & dset:
            raise ValidationError(f"id {min(pset & dset)!r} appears in both node roles")
        seen = set()
        for a, b in edges:
            if a not in pset or b not in dset:
                raise ValidationError(f"edge ({a!r}, {b!r}) does not join a primal to a dual node")
            if (a, b) in seen:
                raise ValidationError(f"duplicate edge ({a!r}, {b!r})")
            seen.add((a, b))
        adj: dict[str, list[str]] = {x: [] for x in primal + dual}
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(self, "_adj", {x: tuple(sorted(ns)) for x, ns in adj.items()})
        roles = {x: NodeRole.PRIMAL for x in primal}
        roles.update({x: NodeRole.DUAL for x in dual})
        object.__setattr__(self, "_roles", roles)

    # -- queries -----------------------------------------------------------

    def role(self, node: str) -> NodeRole:
        try:
            return self._roles[node]  # type: ignore[attr-defined]
        except KeyError:
            raise ValidationError(f"unknown node {node!r}") from None

    def neighbors(self, node: str) -> tuple[str, ...]:
        try:
            return self._adj[node]  # type: ignore[attr-defined]
        except KeyError:
            raise ValidationError(f"unknown node {node!r}") from None

    def degree(self, node: str) -> int:
        return len(self.neighbors(node))

    def node_order(self) -> tuple[str, ...]:
        """All nodes in the canonical sorted order used for dense indexing."""
        return tuple(sorted(self.primal_nodes + self.dual_nodes))

    @property
    def n_nodes(self) -> int:
        return len(self.primal_nodes) + len(self.dual_nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def role_swapped(self) -> "BipartiteGraph":
        """The identical graph with primal and dual roles exchanged."""
        return BipartiteGraph(
            primal_nodes=self.dual_nodes,
            dual_nodes=self.primal_nodes,
            edges=tuple((b, a) for a, b in self.edges),
        )


def build_bipartite(h: Hypergraph) -> BipartiteGraph:
    """Build the bipartite incidence graph of ``h``.

    One primal node per vertex, one dual node per hyperedge and one edge per
    incidence pair, so the edge count equals the sum of all cardinalities.
    """
    edges = tuple(
        sorted((v, e) for e, members in h.hyperedges.items() for v in members)
    )
    return BipartiteGraph(
        primal_nodes=tuple(sorted(h.vertices)),
        dual_nodes=tuple(sorted(h.hyperedges)),
        edges=edges,
    )
