"""Structure-aware simplification of a hypergraph.

Three atomic operations act on the bipartite representation:

* minimal cycle collapse: merge the primal pair or the dual pair of a
  length-4 basis cycle (topology altering, removes every minimal basis
  cycle through the merged pair);
* cycle edge cut: delete one incidence lying on a basis cycle (topology
  altering, removes exactly one independent cycle);
* leaf prune: delete a degree-1 node and its incidence (topology
  preserving).

Candidates are generated only where the decomposition says they help:
collapses inside forbidden sub-hypergraphs, cuts at crossings of the
cluster-contracted block, prunes at tree leaves.  Application order follows
a priority blending rarity of the operands (alpha), their shared adjacency
(beta), their betweenness (gamma) and a topology term (delta).
"""
from __future__ import annotations

import bisect
import heapq
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import networkx as nx

from .decompose import (
    Cycle,
    TopologicalBlock,
    TreeStructure,
    tight_cycle_basis,
    topological_decomposition,
)
from .forbidden import ForbiddenSubHypergraph, block_forbidden
from .model import Hypergraph, ValidationError, build_bipartite
from .planarity import ContractedBlock, CrossingPair, contract_clusters, find_crossings

Edge = tuple[str, str]

COLLAPSE = "collapse"
CUT = "cut"
PRUNE = "prune"
_KIND_RANK = {COLLAPSE: 0, CUT: 1, PRUNE: 2}

TARGETS = ("planar", "eta", "ops")


class StaleOperationError(Exception):
    """The operation's operands no longer exist in the working graph."""


class OperationRejected(ValueError):
    """The operation would violate a topology contract (e.g. disconnect)."""


@dataclass
class PriorityParams:
    """Tuning parameters and stopping rule for a simplification run."""

    alpha: float = 0.0
    beta: float = 0.9
    gamma: float = 0.4
    delta: float = 1.0
    eta_threshold: Optional[float] = None
    prune_threshold: Optional[float] = None
    op_budget: Optional[int] = None
    target: str = "planar"
    seed: int = 42

    def __post_init__(self) -> None:
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}, got {self.target!r}")
        if self.target == "eta" and self.eta_threshold is None:
            raise ValueError("target 'eta' requires eta_threshold")
        if self.target == "ops" and self.op_budget is None:
            raise ValueError("target 'ops' requires op_budget")
        for name in ("alpha", "beta", "gamma", "delta"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class SimplificationOp:
    """One candidate or applied atomic operation."""

    kind: str
    operands: tuple[str, str]
    structure: str
    cycle: tuple[str, ...] = ()  # collapse: the 4 nodes of the target cycle
    provenance: tuple = ()
    priority: float = 0.0


@dataclass(frozen=True)
class OpRecord:
    """An applied operation with its measured topology change."""

    op: SimplificationOp
    b0_before: int
    b1_before: int
    b0_after: int
    b1_after: int
    merged_id: Optional[str] = None
    annotation: Optional[Edge] = None
    cascaded: tuple[str, ...] = ()
    round: int = 0

    @property
    def delta_b1(self) -> int:
        return self.b1_after - self.b1_before


@dataclass
class OpLog:
    """Ordered operation log; replaying it reproduces the output exactly."""

    records: list[OpRecord] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)
    genealogy: dict[str, tuple[str, ...]] = field(default_factory=dict)

    @property
    def annotations(self) -> list[Edge]:
        return [r.annotation for r in self.records if r.annotation is not None]

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "ops": [
                {
                    "kind": r.op.kind,
                    "operands": list(r.op.operands),
                    "structure": r.op.structure,
                    "cycle": list(r.op.cycle),
                    "priority": r.op.priority,
                    "round": r.round,
                    "b0_before": r.b0_before,
                    "b1_before": r.b1_before,
                    "b0_after": r.b0_after,
                    "b1_after": r.b1_after,
                    "delta_b1": r.delta_b1,
                    "merged_id": r.merged_id,
                    "annotation": list(r.annotation) if r.annotation else None,
                    "cascaded": list(r.cascaded),
                }
                for r in self.records
            ],
            "notices": list(self.notices),
            "genealogy": {k: list(v) for k, v in sorted(self.genealogy.items())},
            "annotations": [list(a) for a in self.annotations],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "OpLog":
        log = cls()
        for item in doc.get("ops", []):
            op = SimplificationOp(
                kind=item["kind"],
                operands=tuple(item["operands"]),
                structure=item.get("structure", ""),
                cycle=tuple(item.get("cycle", ())),
                priority=item.get("priority", 0.0),
            )
            log.records.append(
                OpRecord(
                    op=op,
                    b0_before=item.get("b0_before", 0),
                    b1_before=item.get("b1_before", 0),
                    b0_after=item.get("b0_after", 0),
                    b1_after=item.get("b1_after", 0),
                    merged_id=item.get("merged_id"),
                    annotation=tuple(item["annotation"]) if item.get("annotation") else None,
                    cascaded=tuple(item.get("cascaded", ())),
                    round=item.get("round", 0),
                )
            )
        log.notices = list(doc.get("notices", []))
        log.genealogy = {k: tuple(v) for k, v in doc.get("genealogy", {}).items()}
        return log


# ---------------------------------------------------------------------------
# mutable working state
# ---------------------------------------------------------------------------

class SimplificationState:
    """Mutable hypergraph with incidence indexes and merge genealogy."""

    def __init__(self, h: Hypergraph):
        self.hyperedges: dict[str, set[str]] = {e: set(m) for e, m in h.hyperedges.items()}
        self.vertices: set[str] = set(h.vertices)
        self.labels: dict[str, str] = dict(h.labels)
        self.memberships: dict[str, set[str]] = {v: set() for v in self.vertices}
        for e, members in self.hyperedges.items():
            for v in members:
                self.memberships[v].add(e)
        self.genealogy: dict[str, frozenset[str]] = {}

    # -- queries ------------------------------------------------------------

    def exists(self, x: str) -> bool:
        return x in self.vertices or x in self.hyperedges

    def is_vertex(self, x: str) -> bool:
        return x in self.vertices

    def degree(self, x: str) -> int:
        if x in self.vertices:
            return len(self.memberships[x])
        if x in self.hyperedges:
            return len(self.hyperedges[x])
        raise KeyError(x)

    def has_incidence(self, v: str, e: str) -> bool:
        return e in self.hyperedges and v in self.hyperedges[e]

    def snapshot(self) -> Hypergraph:
        return Hypergraph(
            vertices=frozenset(self.vertices),
            hyperedges={e: frozenset(m) for e, m in self.hyperedges.items()},
            labels={k: v for k, v in self.labels.items() if self.exists(k)},
        )

    def betti(self) -> tuple[int, int]:
        elements = len(self.vertices) + len(self.hyperedges)
        incidences = sum(len(m) for m in self.hyperedges.values())
        seen: set[str] = set()
        b0 = 0
        for start in self.vertices | self.hyperedges.keys():
            if start in seen:
                continue
            b0 += 1
            seen.add(start)
            q = deque([start])
            while q:
                x = q.popleft()
                nbrs = self.memberships[x] if x in self.vertices else self.hyperedges[x]
                for y in nbrs:
                    if y not in seen:
                        seen.add(y)
                        q.append(y)
        return b0, b0 + incidences - elements

    def members_of(self, x: str) -> frozenset[str]:
        return self.genealogy.get(x, frozenset({x}))

    # -- mutations ------------------------------------------------------------

    def _merged_name(self, a: str, b: str) -> str:
        parts = sorted(self.members_of(a) | self.members_of(b))
        name = "+".join(parts)
        while self.exists(name) and name not in (a, b):
            name += "'"
        return name

    def merge_pair(self, a: str, b: str) -> str:
        """Merge two vertices or two hyperedges into one element."""
        if not self.exists(a) or not self.exists(b):
            raise StaleOperationError(f"operand missing for merge({a!r}, {b!r})")
        if a == b:
            raise OperationRejected("cannot merge an element with itself")
        if self.is_vertex(a) != self.is_vertex(b):
            raise OperationRejected("merge operands must share a role")
        new = self._merged_name(a, b)
        members = self.members_of(a) | self.members_of(b)
        if self.is_vertex(a):
            es = self.memberships.pop(a) | self.memberships.pop(b)
            self.vertices.discard(a)
            self.vertices.discard(b)
            self.vertices.add(new)
            self.memberships[new] = set()
            for e in es:
                self.hyperedges[e] -= {a, b}
                self.hyperedges[e].add(new)
                self.memberships[new].add(e)
        else:
            vs = self.hyperedges.pop(a) | self.hyperedges.pop(b)
            for v in list(self.memberships):
                self.memberships[v] -= {a, b}
            self.hyperedges[new] = set(vs)
            for v in vs:
                self.memberships[v].add(new)
        label = self.labels.get(min(a, b)) or self.labels.get(max(a, b))
        if label is not None:
            self.labels[new] = label
        self.genealogy[new] = members
        self.genealogy.pop(a, None)
        self.genealogy.pop(b, None)
        return new

    def cut(self, v: str, e: str) -> None:
        """Remove one incidence; the hyperedge must keep >= 1 vertex."""
        if not self.has_incidence(v, e):
            raise StaleOperationError(f"incidence ({v!r}, {e!r}) is gone")
        if len(self.hyperedges[e]) <= 1:
            raise OperationRejected(f"cutting ({v!r}, {e!r}) would empty the hyperedge")
        self.hyperedges[e].discard(v)
        self.memberships[v].discard(e)

    def prune_leaf(self, x: str) -> tuple[str, ...]:
        """Delete a degree-1 node with its incidence; cascades are returned."""
        if not self.exists(x):
            raise StaleOperationError(f"leaf {x!r} is gone")
        if self.degree(x) != 1:
            raise StaleOperationError(f"{x!r} is no longer a leaf")
        cascaded: list[str] = []
        if self.is_vertex(x):
            e = next(iter(self.memberships[x]))
            self.hyperedges[e].discard(x)
            self.vertices.discard(x)
            del self.memberships[x]
            if not self.hyperedges[e]:
                del self.hyperedges[e]
                cascaded.append(e)
        else:
            v = next(iter(self.hyperedges[x]))
            self.memberships[v].discard(x)
            del self.hyperedges[x]
        return tuple(cascaded)


# ---------------------------------------------------------------------------
# candidate generation
# ---------------------------------------------------------------------------

def candidate_collapses(
    block: TopologicalBlock, records: Sequence[ForbiddenSubHypergraph]
) -> list[SimplificationOp]:
    """Two collapse candidates (primal merge, dual merge) per member minimal
    cycle of every forbidden record."""
    out: list[SimplificationOp] = []
    primal = {v for v, _e in block.edges}
    for ri, record in enumerate(records):
        for ci in record.members:
            cyc = block.basis[ci]
            ps = tuple(sorted(x for x in cyc.nodes if x in primal))
            ds = tuple(sorted(x for x in cyc.nodes if x not in primal))
            for pair in (ps, ds):
                out.append(
                    SimplificationOp(
                        kind=COLLAPSE,
                        operands=pair,
                        structure=block.id,
                        cycle=cyc.nodes,
                        provenance=("record", ri, ci),
                    )
                )
    return out


def candidate_cuts(
    block: TopologicalBlock,
    crossings: Sequence[CrossingPair],
    contracted: Optional[ContractedBlock] = None,
) -> list[SimplificationOp]:
    """Two cut candidates per crossing pair, mapped back to real incidences.

    Crossing edges that fail to map back to a bipartite edge (cluster
    internal) are discarded.
    """
    out: list[SimplificationOp] = []
    for xi, pair in enumerate(crossings):
        for side in (pair.edge_a, pair.edge_b):
            if contracted is not None:
                orig = contracted.original_edge(*side)
            else:
                a, b = side
                orig = (a, b) if (a, b) in set(block.edges) else (b, a)
                if orig not in set(block.edges):
                    orig = None
            if orig is None:
                continue
            out.append(
                SimplificationOp(
                    kind=CUT,
                    operands=orig,
                    structure=block.id,
                    provenance=("crossing", xi),
                )
            )
    return out


def candidate_prunes(tree: TreeStructure) -> list[SimplificationOp]:
    """One prune candidate per current leaf of the tree, roots excluded."""
    degree: dict[str, int] = {}
    neighbor: dict[str, str] = {}
    for a, b in tree.edges:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
        neighbor[a] = b if degree[a] == 1 else neighbor.get(a, b)
        neighbor[b] = a if degree[b] == 1 else neighbor.get(b, a)
    roots = {n for n, _ in tree.roots}
    out = []
    for x in sorted(tree.nodes):
        if degree.get(x, 0) == 1 and x not in roots:
            out.append(
                SimplificationOp(
                    kind=PRUNE,
                    operands=(x, neighbor[x]),
                    structure=tree.id,
                    provenance=("leaf",),
                )
            )
    return out


# ---------------------------------------------------------------------------
# priorities
# ---------------------------------------------------------------------------

@dataclass
class PriorityContext:
    """Per-structure statistics frozen at candidate-generation time."""

    kind: str  # "block" | "tree"
    percentile: dict[str, float]
    betweenness: dict[str, float]
    neighbors: dict[str, set[str]]
    basis: tuple[Cycle, ...] = ()
    depth: dict[str, int] = field(default_factory=dict)
    depth_low: dict[str, int] = field(default_factory=dict)
    root_height: int = 0
    adjacency_norm: float = 0.0

    @classmethod
    def for_block(cls, edges: Iterable[Edge], basis: Sequence[Cycle]) -> "PriorityContext":
        pairs = sorted(set(edges))
        neighbors: dict[str, set[str]] = {}
        for v, e in pairs:
            neighbors.setdefault(v, set()).add(e)
            neighbors.setdefault(e, set()).add(v)
        return cls(
            kind="block",
            percentile=_percentiles(neighbors),
            betweenness=_betweenness(pairs),
            neighbors=neighbors,
            basis=tuple(basis),
        )

    @classmethod
    def for_tree(
        cls, edges: Iterable[Edge], depth: dict[str, int], depth_low: dict[str, int], root_height: int
    ) -> "PriorityContext":
        pairs = sorted(set(edges))
        neighbors: dict[str, set[str]] = {}
        for a, b in pairs:
            neighbors.setdefault(a, set()).add(b)
            neighbors.setdefault(b, set()).add(a)
        return cls(
            kind="tree",
            percentile=_percentiles(neighbors),
            betweenness=_betweenness(pairs),
            neighbors=neighbors,
            depth=dict(depth),
            depth_low=dict(depth_low),
            root_height=root_height,
        )

    def common_count(self, op: SimplificationOp) -> int:
        a, b = op.operands
        na = self.neighbors.get(a, set())
        nb = self.neighbors.get(b, set())
        if op.kind == COLLAPSE:
            return len(na & nb)
        if op.kind == CUT:
            # number of minimal cycles riding on the incidence (v, e)
            v, e = op.operands
            count = 0
            for u in self.neighbors.get(e, set()) - {v}:
                count += len((self.neighbors.get(u, set()) & self.neighbors.get(v, set())) - {e})
            return count
        return len(na & nb)  # prune: always 0 in a bipartite graph


def _percentiles(neighbors: dict[str, set[str]]) -> dict[str, float]:
    degrees = sorted(len(ns) for ns in neighbors.values())
    n = len(degrees)
    out = {}
    for x, ns in neighbors.items():
        d = len(ns)
        below = bisect.bisect_left(degrees, d)
        equal = bisect.bisect_right(degrees, d) - below
        out[x] = (below + 0.5 * equal) / n if n else 0.0
    return out


def _betweenness(pairs: Sequence[Edge]) -> dict[str, float]:
    g = nx.Graph()
    g.add_edges_from(pairs)
    if g.number_of_nodes() == 0:
        return {}
    return nx.betweenness_centrality(g, normalized=True)


def priority(op: SimplificationOp, params: PriorityParams, context: PriorityContext) -> float:
    """Application priority: alpha * rarity + beta * adjacency + gamma *
    betweenness-complement + delta * topology term.

    The topology term is ``1/s + 1/l`` for block operations (s basis cycles
    killed, l their mean length) and ``1 - depth_low(x)/height`` for prunes.
    """
    a, b = op.operands
    pr = (context.percentile.get(a, 0.0) + context.percentile.get(b, 0.0)) / 2
    s_stat = 1.0 - pr
    common = context.common_count(op)
    norm = context.adjacency_norm or float(common) or 1.0
    s_adj = common / norm if norm else 0.0
    btw = (context.betweenness.get(a, 0.0) + context.betweenness.get(b, 0.0)) / 2
    s_btw = 1.0 - btw
    if op.kind == PRUNE:
        if context.root_height <= 0:
            raise ValueError("prune priority requires a positive root height")
        s_topo = 1.0 - context.depth_low.get(a, 0) / context.root_height
    else:
        s, lengths = _cycle_load(op, context.basis)
        if s == 0 or not lengths:
            raise ValueError(f"operands of {op.kind} lie on no basis cycle")
        l = sum(lengths) / len(lengths)
        s_topo = 1.0 / s + 1.0 / l
    return (
        params.alpha * s_stat
        + params.beta * s_adj
        + params.gamma * s_btw
        + params.delta * s_topo
    )


def _cycle_load(op: SimplificationOp, basis: Sequence[Cycle]) -> tuple[int, list[int]]:
    a, b = op.operands
    lengths = []
    s = 0
    for c in basis:
        nodes = c.node_set()
        if a in nodes and b in nodes:
            lengths.append(c.length)
            if op.kind == COLLAPSE and c.is_minimal:
                s += 1
            elif op.kind == CUT and ((a, b) in c.edge_set() or (b, a) in c.edge_set()):
                s += 1
    if op.kind == CUT:
        lengths = [c.length for c in basis if (a, b) in c.edge_set() or (b, a) in c.edge_set()]
    return s, lengths


def score_candidates(
    candidates: Sequence[SimplificationOp],
    params: PriorityParams,
    context: PriorityContext,
) -> list[SimplificationOp]:
    """Assign priorities (normalizing the adjacency term over the batch) and
    sort by descending priority with a deterministic tie-break."""
    commons = [context.common_count(op) for op in candidates]
    context.adjacency_norm = float(max(commons, default=0))
    scored = [
        replace(op, priority=priority(op, params, context)) for op in candidates
    ]
    scored.sort(key=lambda o: (-o.priority, _KIND_RANK[o.kind], o.operands))
    return scored


# ---------------------------------------------------------------------------
# atomic application with topology bookkeeping
# ---------------------------------------------------------------------------

def apply_collapse(state: SimplificationState, op: SimplificationOp, round: int = 0) -> OpRecord:
    """Merge the operand pair; every minimal cycle through the pair dies."""
    a, b = op.operands
    for x in op.cycle:
        if not state.exists(x):
            raise StaleOperationError(f"cycle node {x!r} is gone")
    b0, b1 = state.betti()
    new = state.merge_pair(a, b)
    a0, a1 = state.betti()
    return OpRecord(
        op=op, b0_before=b0, b1_before=b1, b0_after=a0, b1_after=a1,
        merged_id=new, round=round,
    )


def apply_cut(state: SimplificationState, op: SimplificationOp, round: int = 0) -> OpRecord:
    """Delete the incidence; rejected when it would disconnect the graph."""
    v, e = op.operands
    if not state.has_incidence(v, e):
        raise StaleOperationError(f"incidence ({v!r}, {e!r}) is gone")
    b0, b1 = state.betti()
    state.cut(v, e)
    a0, a1 = state.betti()
    if a0 != b0:
        # not on any cycle: restore and reject
        state.hyperedges[e].add(v)
        state.memberships[v].add(e)
        raise OperationRejected(f"cutting ({v!r}, {e!r}) would disconnect the graph")
    return OpRecord(
        op=op, b0_before=b0, b1_before=b1, b0_after=a0, b1_after=a1,
        annotation=(v, e), round=round,
    )


def apply_prune(state: SimplificationState, op: SimplificationOp, round: int = 0) -> OpRecord:
    """Delete the leaf operand and its single incidence."""
    leaf = op.operands[0]
    b0, b1 = state.betti()
    cascaded = state.prune_leaf(leaf)
    a0, a1 = state.betti()
    return OpRecord(
        op=op, b0_before=b0, b1_before=b1, b0_after=a0, b1_after=a1,
        cascaded=cascaded, round=round,
    )


_APPLIERS = {COLLAPSE: apply_collapse, CUT: apply_cut, PRUNE: apply_prune}


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------

class _Engine:
    def __init__(self, h: Hypergraph, params: PriorityParams, jobs: int = 1):
        self.params = params
        self.jobs = max(1, jobs)
        self.state = SimplificationState(h)
        self.log = OpLog()
        self.decomp = topological_decomposition(build_bipartite(h))
        self.prepared: dict[str, tuple] = {}
        self.edges: dict[str, set[Edge]] = {}
        for blk in self.decomp.blocks:
            self.edges[blk.id] = set(blk.edges)
        for tree in self.decomp.trees:
            self.edges[tree.id] = set(tree.edges)
        self.tree_depth: dict[str, dict[str, int]] = {
            t.id: dict(t.depth) for t in self.decomp.trees
        }
        self.tree_low: dict[str, dict[str, int]] = {
            t.id: dict(t.depth_low) for t in self.decomp.trees
        }
        self.tree_roots: dict[str, list[str]] = {
            t.id: [n for n, _ in t.roots] for t in self.decomp.trees
        }
        self.root_height: dict[str, int] = {}
        for t in self.decomp.trees:
            for n, _ in t.roots:
                self.root_height[n] = max(self.root_height.get(n, 0), t.height)
        self.ops_left = params.op_budget if params.target == "ops" else None
        self.round = 0

    # -- bookkeeping ----------------------------------------------------------

    def _budget_exhausted(self) -> bool:
        return self.ops_left is not None and self.ops_left <= 0

    def _rename(self, old_pair: tuple[str, str], new: str) -> None:
        gone = set(old_pair)
        for sid, es in self.edges.items():
            if any(a in gone or b in gone for a, b in es):
                self.edges[sid] = {
                    (new if a in gone else a, new if b in gone else b) for a, b in es
                }
        for maps in (self.tree_depth, self.tree_low):
            for sid, m in maps.items():
                for x in gone & m.keys():
                    m[new] = m.pop(x)
        for sid, roots in self.tree_roots.items():
            self.tree_roots[sid] = [new if r in gone else r for r in roots]
        heights = [self.root_height.pop(x) for x in list(gone) if x in self.root_height]
        if heights:
            self.root_height[new] = max([self.root_height.get(new, 0), *heights])

    def _apply(self, op: SimplificationOp) -> Optional[OpRecord]:
        try:
            rec = _APPLIERS[op.kind](self.state, op, round=self.round)
        except StaleOperationError as exc:
            self.log.notices.append(f"{op.structure}: skipped stale {op.kind}: {exc}")
            return None
        except OperationRejected as exc:
            self.log.notices.append(f"{op.structure}: rejected {op.kind}: {exc}")
            return None
        self.log.records.append(rec)
        if self.ops_left is not None:
            self.ops_left -= 1
        if rec.cascaded:
            self.log.notices.append(
                f"{op.structure}: cascade removed {', '.join(rec.cascaded)}"
            )
        if op.kind == COLLAPSE:
            self._rename(op.operands, rec.merged_id)
        elif op.kind == CUT:
            self.edges[op.structure].discard(op.operands)
        else:
            self.edges[op.structure].discard(op.operands)
            self.edges[op.structure].discard((op.operands[1], op.operands[0]))
            for gone_id in rec.cascaded:
                self.edges[op.structure] = {
                    pair for pair in self.edges[op.structure] if gone_id not in pair
                }
        return rec

    # -- block loop -------------------------------------------------------------

    def _block_view(self, sid: str) -> Optional[TopologicalBlock]:
        edges = self.edges[sid]
        if not edges:
            return None
        pairs = tuple(sorted(edges))
        nodes = frozenset(x for p in pairs for x in p)
        b1 = 1 + len(pairs) - len(nodes)
        basis = tuple(tight_cycle_basis(pairs)) if b1 > 0 else ()
        return TopologicalBlock(
            id=sid,
            nodes=nodes,
            edges=pairs,
            basis=basis,
            betti1=b1,
            entanglement=Fraction(b1, len(nodes)),
        )

    def _block_planar(self, sid: str) -> bool:
        g = nx.Graph()
        g.add_edges_from(sorted(self.edges[sid]))
        ok, _ = nx.check_planarity(g)
        return ok

    def _block_target_met(self, view: TopologicalBlock, convex: bool) -> bool:
        if self.params.target == "planar":
            return convex
        if self.params.target == "eta":
            return float(view.entanglement) <= self.params.eta_threshold or convex
        return self._budget_exhausted()

    def _analyze_block(self, sid: str):
        """Pure analysis of a block's current subgraph; safe to precompute."""
        view = self._block_view(sid)
        if view is None:
            return None
        clusters, records = block_forbidden(view)
        contracted = contract_clusters(view, clusters)
        crossings = find_crossings(contracted.graph, seed=self.params.seed)
        return view, clusters, records, contracted, crossings

    def simplify_block(self, sid: str) -> None:
        first_round = True
        while True:
            if self._budget_exhausted():
                return
            prepared = self.prepared.pop(sid, None) if first_round else None
            first_round = False
            if prepared is not None and set(prepared[0].edges) != self.edges[sid]:
                prepared = None  # an earlier block's merge renamed shared nodes
            analysis = prepared if prepared is not None else self._analyze_block(sid)
            if analysis is None:
                return
            view, clusters, records, contracted, crossings = analysis
            if view.betti1 <= 0:
                return
            zykov = self._block_planar(sid)
            convex = zykov and not records
            if self._block_target_met(view, convex):
                return
            collapse_cands = candidate_collapses(view, records)
            cut_cands = candidate_cuts(view, crossings, contracted)
            candidates = collapse_cands + cut_cands
            if not candidates and not zykov:
                # contraction hid the entanglement; fall back to raw crossings
                raw = nx.Graph()
                raw.add_edges_from(view.edges)
                crossings = find_crossings(raw, seed=self.params.seed)
                cut_cands = candidate_cuts(view, crossings, None)
                candidates = cut_cands
            if not candidates:
                if not convex:
                    self.log.notices.append(
                        f"{sid}: no applicable operations; stopping with target unmet"
                    )
                return
            context = PriorityContext.for_block(view.edges, view.basis)
            scored = score_candidates(candidates, self.params, context)
            if not self._run_block_round(sid, view, scored, records):
                return
            self.round += 1

    def _run_block_round(self, sid, view, scored, records) -> bool:
        """Apply one sorted candidate round; True when another round may help."""
        removed: set[int] = set()
        partner: dict[int, int] = {}
        by_crossing: dict[int, list[int]] = {}
        by_record: dict[int, list[int]] = {}
        cycle_records: dict[tuple, set[int]] = {}
        for i, op in enumerate(scored):
            if op.kind == CUT:
                by_crossing.setdefault(op.provenance[1], []).append(i)
            elif op.kind == COLLAPSE and op.provenance and op.provenance[0] == "record":
                by_record.setdefault(op.provenance[1], []).append(i)
                cycle_records.setdefault(op.cycle, set()).add(op.provenance[1])
        for xs in by_crossing.values():
            if len(xs) >= 2:
                for i in xs:
                    partner[i] = next(j for j in xs if j != i)
        simplified_records: set[int] = set()
        applied = 0
        planar_reached = False
        for i, op in enumerate(scored):
            if i in removed:
                continue
            if self._budget_exhausted():
                return False
            if self.params.target == "eta":
                es = self.edges[sid]
                ns = {x for p in es for x in p}
                if not es or (1 + len(es) - len(ns)) / len(ns) <= self.params.eta_threshold:
                    return False
            if planar_reached and op.kind == CUT:
                continue
            rec = self._apply(op)
            if rec is None:
                continue
            applied += 1
            if op.kind == CUT:
                j = partner.get(i)
                if j is not None:
                    removed.add(j)
                if self._block_planar(sid):
                    planar_reached = True
            elif op.kind == COLLAPSE:
                ri = op.provenance[1]
                simplified_records.add(ri)
                for j in by_record.get(ri, ()):
                    if j == i or j in removed:
                        continue
                    other = scored[j]
                    alternates = cycle_records.get(other.cycle, set()) - simplified_records
                    if not alternates:
                        removed.add(j)
        return applied > 0

    # -- tree pruning -----------------------------------------------------------

    def prune_tree(self, sid: str) -> None:
        threshold = self.params.prune_threshold
        if threshold is None:
            return
        edges = self.edges[sid]
        if not edges:
            return
        roots = set(self.tree_roots[sid])
        height = max(
            (self.root_height.get(r, 0) for r in roots),
            default=max(self.tree_low[sid].values(), default=0),
        )
        if height <= 0:
            return
        context = PriorityContext.for_tree(
            edges, self.tree_depth[sid], self.tree_low[sid], height
        )
        view_tree = TreeStructure(
            id=sid, kind="branch", nodes=frozenset(x for p in edges for x in p),
            edges=tuple(sorted(edges)), roots=tuple((r, None) for r in sorted(roots)),
            depth=self.tree_depth[sid], depth_low=self.tree_low[sid], height=height,
        )
        candidates = candidate_prunes(view_tree)
        context.adjacency_norm = float(
            max((context.common_count(op) for op in candidates), default=0)
        )
        heap: list[tuple[float, int, tuple, SimplificationOp]] = []
        for op in candidates:
            p = priority(op, self.params, context)
            heapq.heappush(heap, (-p, _KIND_RANK[op.kind], op.operands, replace(op, priority=p)))
        while heap:
            if self._budget_exhausted():
                return
            negp, _rank, _ops, op = heapq.heappop(heap)
            if -negp < threshold:
                return
            if not self.state.exists(op.operands[0]) or self.state.degree(op.operands[0]) != 1:
                self.log.notices.append(
                    f"{sid}: skipped stale prune of {op.operands[0]!r}"
                )
                continue
            rec = self._apply(op)
            if rec is None:
                continue
            parent = op.operands[1]
            if (
                self.state.exists(parent)
                and parent not in roots
                and self.state.degree(parent) == 1
            ):
                live = {x for pair in self.edges[sid] for x in pair}
                if parent in live:
                    nbr = next(
                        (b if a == parent else a)
                        for a, b in self.edges[sid]
                        if parent in (a, b)
                    )
                    newop = SimplificationOp(
                        kind=PRUNE, operands=(parent, nbr), structure=sid,
                        provenance=("requeued",),
                    )
                    p = priority(newop, self.params, context)
                    heapq.heappush(
                        heap, (-p, _KIND_RANK[PRUNE], newop.operands, replace(newop, priority=p))
                    )
            self.round += 1

    # -- orchestration ------------------------------------------------------------

    def run(self) -> tuple[Hypergraph, OpLog]:
        blocks = sorted(
            self.decomp.blocks, key=lambda b: (-b.entanglement, b.id)
        )
        if self.jobs > 1 and len(blocks) > 1:
            # partition contract: the first-round analysis of every block is a
            # pure function of its own edge set, so it may run concurrently;
            # application (and any cross-boundary rename) stays sequential.
            from concurrent.futures import ThreadPoolExecutor

            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                for sid, analysis in pool.map(
                    lambda b: (b.id, self._analyze_block(b.id)), blocks
                ):
                    if analysis is not None:
                        self.prepared[sid] = analysis
        for blk in blocks:
            if self._budget_exhausted():
                break
            self.simplify_block(blk.id)
            self.round += 1
        if self.params.prune_threshold is not None:
            for tree in self.decomp.trees:
                if self._budget_exhausted():
                    break
                self.prune_tree(tree.id)
        self.log.genealogy = {
            k: tuple(sorted(v)) for k, v in self.state.genealogy.items()
        }
        return self.state.snapshot(), self.log


def simplify(
    h: Hypergraph, params: Optional[PriorityParams] = None, jobs: int = 1
) -> tuple[Hypergraph, OpLog]:
    """Simplify ``h``: blocks in decreasing entanglement order, then trees.

    Block candidates are applied by descending priority with the post-op
    candidate removals (a resolved crossing drops its partner edge; a
    collapsed record drops its other member cycles unless they belong to a
    record that is still pending).  ``jobs`` parallelizes the per-block
    analysis passes; application order and results are identical either way.
    Returns the simplified hypergraph and the operation log; an empty log is
    a valid result.
    """
    params = params or PriorityParams()
    return _Engine(h, params, jobs=jobs).run()


def replay(h: Hypergraph, log: OpLog) -> Hypergraph:
    """Re-apply a log mechanically; reproduces the simplified output."""
    state = SimplificationState(h)
    for rec in log.records:
        op = rec.op
        if op.kind == COLLAPSE:
            merged = state.merge_pair(*op.operands)
            if rec.merged_id is not None and merged != rec.merged_id:
                raise ValidationError(
                    f"replay produced {merged!r} where the log has {rec.merged_id!r}"
                )
        elif op.kind == CUT:
            state.cut(*op.operands)
        elif op.kind == PRUNE:
            state.prune_leaf(op.operands[0])
        else:
            raise ValidationError(f"unknown operation kind {op.kind!r}")
    return state.snapshot()


# ---------------------------------------------------------------------------
# incremental basis updates
# ---------------------------------------------------------------------------

class IncrementalUpdateError(Exception):
    """The per-op rewrite does not apply; recompute the basis instead."""


def update_basis_after_collapse(
    basis: Sequence[Cycle], a: str, b: str, merged: str
) -> list[Cycle]:
    """Rewrite a basis after merging the pair (a, b) into ``merged``.

    Minimal cycles through both operands disappear; longer cycles through
    both shrink by two (tightness guarantees the pair sits two steps apart
    on them); cycles touching only one operand are renamed.
    """
    from .decompose import _canonical_cycle

    out: list[Cycle] = []
    for c in basis:
        nodes = c.node_set()
        vertex_side = {v for v, _e in c.edges}
        primal = vertex_side - {a, b}
        if a in vertex_side or b in vertex_side:
            primal = primal | {merged}
        if a in nodes and b in nodes:
            if c.is_minimal:
                continue
            seq = list(c.nodes)
            n = len(seq)
            ia, ib = seq.index(a), seq.index(b)
            if (ia - ib) % n not in (2, n - 2):
                raise IncrementalUpdateError(
                    f"operands {a!r}, {b!r} are not two steps apart on a cycle"
                )
            first = ia if (ib - ia) % n == 2 else ib
            second = (first + 2) % n
            # the two-step arc first..second collapses into the merged node
            keep = [seq[(second + k) % n] for k in range(1, n - 2)]
            out.append(_canonical_cycle([merged] + keep, frozenset(primal)))
        elif a in nodes or b in nodes:
            seq = [merged if x in (a, b) else x for x in c.nodes]
            out.append(_canonical_cycle(seq, frozenset(primal)))
        else:
            out.append(c)
    return out


def update_basis_after_cut(
    basis: Sequence[Cycle], edge: Edge, remaining_edges: Iterable[Edge]
) -> list[Cycle]:
    """Rewrite a basis after cutting ``edge``.

    One basis cycle through the edge (the shortest) disappears; the others
    replace the edge by the new shortest path between its endpoints.  Raises
    when a rewrite stops being a simple cycle.
    """
    from .decompose import _canonical_cycle

    holders = [i for i, c in enumerate(basis) if edge in c.edge_set()]
    if not holders:
        return list(basis)
    drop = min(holders, key=lambda i: (basis[i].length, i))
    v, e = edge
    adj: dict[str, set[str]] = {}
    pairs = set(remaining_edges)
    pairs.discard(edge)
    for x, y in pairs:
        adj.setdefault(x, set()).add(y)
        adj.setdefault(y, set()).add(x)
    out: list[Cycle] = []
    for i, c in enumerate(basis):
        if i == drop:
            continue
        if edge not in c.edge_set():
            out.append(c)
            continue
        path = _shortest_path(adj, v, e)
        if path is None:
            raise IncrementalUpdateError(f"no replacement path for {edge!r}")
        seq = list(c.nodes)
        n = len(seq)
        iv = seq.index(v)
        if seq[(iv + 1) % n] == e:
            ordered = [seq[(iv + k) % n] for k in range(n)]  # v, e, x1, ...
        else:
            ordered = [seq[(iv - k) % n] for k in range(n)]
        # walk: v -> replacement path -> e -> remainder of the old cycle -> v
        new_seq = path + ordered[2:]
        if len(set(new_seq)) != len(new_seq):
            raise IncrementalUpdateError("rewritten cycle is not simple")
        primal = {x for x, _y in pairs} | {x for x, _y in c.edges}
        out.append(_canonical_cycle(new_seq, frozenset(primal)))
    return out


def _shortest_path(adj: dict[str, set[str]], src: str, dst: str) -> Optional[list[str]]:
    if src not in adj or dst not in adj:
        return None
    parent: dict[str, Optional[str]] = {src: None}
    q = deque([src])
    while q:
        x = q.popleft()
        if x == dst:
            path = [x]
            while parent[x] is not None:
                x = parent[x]
                path.append(x)
            return list(reversed(path))
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                q.append(y)
    return None
