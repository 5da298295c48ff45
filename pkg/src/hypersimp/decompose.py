"""Topology-guided decomposition of the bipartite incidence graph.

The bipartite graph splits, edge-disjointly, into:

* topological blocks: the multi-edge 2-connected components, each carrying
  a basis of tight cycles (a cycle is tight when it contains a shortest
  path between every pair of its nodes);
* bridges and branches: trees of single-edge blocks, distinguished by how
  many block nodes (roots) they attach to.

Blocks are found with an iterative depth-first search (Hopcroft/Tarjan with
an edge stack, safe for parallel edges).  The basis keeps as many minimal
cycles as the cycle space allows, then completes itself through a pair of
nested breadth-first searches whose back-edge cycles are split at shortcut
pairs until tight; see :func:`tight_cycle_basis_indexed`.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .model import BipartiteGraph, ValidationError

Edge = tuple[str, str]


# ---------------------------------------------------------------------------
# dense-index multigraph shared by the block and cycle-basis algorithms
# ---------------------------------------------------------------------------

class IndexedGraph:
    """Undirected multigraph over dense node indices; parallel edges allowed."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        self.n = n
        self.edges = [(int(u), int(v)) for u, v in edges]
        self.adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for k, (u, v) in enumerate(self.edges):
            if u == v:
                raise ValueError("self-loops are not supported")
            self.adj[u].append((v, k))
            self.adj[v].append((u, k))
        for lst in self.adj:
            lst.sort()

    @property
    def m(self) -> int:
        return len(self.edges)


def biconnected_components(g: IndexedGraph) -> list[list[int]]:
    """Edge-disjoint blocks of ``g`` as sorted lists of edge indices.

    Every edge lands in exactly one block; a block is either a single edge
    or 2-connected.  Parallel edges form 2-cycles and therefore share a
    block.  Iterative so that long paths do not exhaust the call stack.
    """
    n = g.n
    visited = [False] * n
    depth = [0] * n
    low = [0] * n
    parent_edge = [-1] * n
    ptr = [0] * n
    blocks: list[list[int]] = []
    edge_stack: list[int] = []
    for root in range(n):
        if visited[root]:
            continue
        visited[root] = True
        stack = [root]
        while stack:
            x = stack[-1]
            if ptr[x] < len(g.adj[x]):
                y, k = g.adj[x][ptr[x]]
                ptr[x] += 1
                if k == parent_edge[x]:
                    continue
                if not visited[y]:
                    visited[y] = True
                    depth[y] = depth[x] + 1
                    low[y] = depth[y]
                    parent_edge[y] = k
                    edge_stack.append(k)
                    stack.append(y)
                elif depth[y] < depth[x]:
                    # back edge to an ancestor (or a parallel edge to the parent)
                    edge_stack.append(k)
                    if depth[y] < low[x]:
                        low[x] = depth[y]
                # depth[y] >= depth[x]: already handled from the other endpoint
            else:
                stack.pop()
                if stack:
                    p = stack[-1]
                    if low[x] < low[p]:
                        low[p] = low[x]
                    if low[x] >= depth[p]:
                        block = []
                        while True:
                            k = edge_stack.pop()
                            block.append(k)
                            if k == parent_edge[x]:
                                break
                        blocks.append(sorted(block))
    return blocks


class _Gf2Rank:
    """Incremental GF(2) rank over edge-index bit vectors."""

    def __init__(self) -> None:
        self.pivots: dict[int, int] = {}

    def reduce(self, mask: int) -> int:
        while mask:
            hb = mask.bit_length() - 1
            piv = self.pivots.get(hb)
            if piv is None:
                return mask
            mask ^= piv
        return 0

    def add(self, mask: int) -> bool:
        mask = self.reduce(mask)
        if not mask:
            return False
        self.pivots[mask.bit_length() - 1] = mask
        return True


def _edge_mask(edge_idxs: Sequence[int]) -> int:
    mask = 0
    for k in edge_idxs:
        mask ^= 1 << k
    return mask


def tight_cycle_basis_indexed(g: IndexedGraph) -> list[tuple[list[int], list[int]]]:
    """Cycle basis of tight cycles for a connected ``g``.

    Returns exactly ``m - n + 1`` (node sequence, edge sequence) pairs, all
    simple, tight and independent over GF(2), built in two passes:

    1. shortest cycles through every node pair (parallel pairs, triangles
       against a direct edge, 4-cycles fanned over 2-paths), filtered to a
       maximal independent family - this keeps as many minimal cycles in
       the basis as the cycle space allows;
    2. an outer breadth-first search whose back edges each close a cycle
       with the shortest path inside the traversed subgraph.  A survivor
       that is not yet tight is split at a shortcut pair into shorter
       cycles until every kept piece is tight.
    """
    if g.n == 0:
        return []
    rank = _Gf2Rank()
    basis: list[tuple[list[int], list[int]]] = []

    def try_add(nodes: list[int], edges: list[int]) -> bool:
        if rank.add(_edge_mask(edges)):
            basis.append((nodes, edges))
            return True
        return False

    neighbor_sets: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        neighbor_sets[u].add(v)
        neighbor_sets[v].add(u)

    for nodes, edges in _short_cycle_candidates(g, neighbor_sets):
        try_add(nodes, edges)

    in_node = [False] * g.n
    in_edge = [False] * g.m
    s_adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    q = deque([0])
    in_node[0] = True
    while q:
        x = q.popleft()
        for y, k in g.adj[x]:
            if in_edge[k]:
                continue
            if in_node[y]:
                nodes, edges = _close_cycle(s_adj, x, y, k)
                if rank.reduce(_edge_mask(edges)):
                    for pnodes, pedges in _tighten(g, nodes, edges):
                        try_add(pnodes, pedges)
            else:
                in_node[y] = True
                q.append(y)
            in_edge[k] = True
            s_adj[x].append((y, k))
            s_adj[y].append((x, k))
    expected = g.m - g.n + 1
    if len(basis) != expected:
        raise ValidationError(
            f"cycle basis has {len(basis)} members, expected {expected}"
        )
    return basis


def _short_cycle_candidates(g: IndexedGraph, neighbor_sets: list[set[int]]):
    """Candidate 2-, 3- and 4-cycles through each node pair, shortest first.

    For a pair with routes r0 <= r1 <= ... (direct parallel edges, then
    2-paths), the fan (r0, ri) spans every cycle the pair contributes.
    4-cycle candidates with a chord between their midpoints are skipped;
    triangles through the chord cover that dimension instead.
    """
    routes: dict[tuple[int, int], list[tuple[int, int, tuple]]] = {}
    for k, (u, v) in enumerate(g.edges):
        pair = (u, v) if u < v else (v, u)
        routes.setdefault(pair, []).append((1, k, (k,)))
    for mid in range(g.n):
        inc = g.adj[mid]
        for i in range(len(inc)):
            xi, ki = inc[i]
            for j in range(i + 1, len(inc)):
                xj, kj = inc[j]
                if xi == xj:
                    continue
                pair = (xi, xj) if xi < xj else (xj, xi)
                routes.setdefault(pair, []).append((2, mid, (ki, kj, mid)))
    for (x, y) in sorted(routes):
        rs = sorted(routes[(x, y)])
        if len(rs) < 2:
            continue
        r0 = rs[0]
        for ri in rs[1:]:
            yield from _fan_cycle(g, x, y, r0, ri, neighbor_sets)


def _fan_cycle(g, x, y, r0, ri, neighbor_sets):
    len0, _key0, data0 = r0
    leni, _keyi, datai = ri
    if len0 == 1 and leni == 1:
        yield [x, y], [data0[0], datai[0]]
    elif len0 == 1 and leni == 2:
        ki, kj, mid = datai
        first = ki if mid in g.edges[ki] and x in g.edges[ki] else kj
        second = kj if first == ki else ki
        yield [x, mid, y], [first, second, data0[0]]
    elif len0 == 2 and leni == 2:
        k0a, k0b, mid0 = data0
        kia, kib, midi = datai
        if midi in neighbor_sets[mid0]:
            return  # chorded 4-cycle: never tight, covered by triangles
        f0 = k0a if x in g.edges[k0a] else k0b
        s0 = k0b if f0 == k0a else k0a
        fi = kia if y in g.edges[kia] else kib
        si = kib if fi == kia else kia
        yield [x, mid0, y, midi], [f0, s0, fi, si]


def _bounded_distances(g: IndexedGraph, src: int, limit: int) -> dict[int, int]:
    dist = {src: 0}
    q = deque([src])
    while q:
        a = q.popleft()
        if dist[a] >= limit:
            continue
        for b, _k in g.adj[a]:
            if b not in dist:
                dist[b] = dist[a] + 1
                q.append(b)
    return dist


def _shortest_path_indexed(g: IndexedGraph, src: int, dst: int):
    parent: dict[int, tuple[int, int]] = {src: (-1, -1)}
    q = deque([src])
    while q:
        a = q.popleft()
        if a == dst:
            nodes = [a]
            edges = []
            while parent[a][0] != -1:
                pa, pk = parent[a]
                edges.append(pk)
                nodes.append(pa)
                a = pa
            nodes.reverse()
            edges.reverse()
            return nodes, edges
        for b, k in g.adj[a]:
            if b not in parent:
                parent[b] = (a, k)
                q.append(b)
    raise AssertionError("disconnected subgraph in shortest-path query")


def _tighten(g: IndexedGraph, nodes: list[int], edges: list[int]):
    """Split a cycle at shortcut pairs until every piece is simple and tight.

    Each split replaces a cycle by two strictly shorter closed walks whose
    GF(2) sum equals the original, so the spanned cycle space is preserved.
    """
    stack = [(nodes, edges)]
    out: list[tuple[list[int], list[int]]] = []
    while stack:
        seq, eds = stack.pop()
        L = len(seq)
        if L < 2 or _edge_mask(eds) == 0:
            continue
        # split walks with repeated nodes first
        first_pos: dict[int, int] = {}
        repeat = None
        for i, x in enumerate(seq):
            if x in first_pos:
                repeat = (first_pos[x], i)
                break
            first_pos[x] = i
        if repeat is not None:
            i, j = repeat
            stack.append((seq[i:j], eds[i:j]))
            stack.append((seq[:i] + seq[j:], eds[:i] + eds[j:]))
            continue
        violation = None
        half = L // 2
        for i in range(L):
            dist = _bounded_distances(g, seq[i], half)
            for j in range(i + 1, L):
                arc = min(j - i, L - (j - i))
                d = dist.get(seq[j], half + 1)
                if d < arc:
                    cand = (d, i, j)
                    if violation is None or cand < violation:
                        violation = cand
        if violation is None:
            out.append((seq, eds))
            continue
        _d, i, j = violation
        pnodes, pedges = _shortest_path_indexed(g, seq[i], seq[j])
        # walk 1: shortcut path, then back along the short arc
        w1_nodes = pnodes[:-1] + list(reversed(seq[i + 1 : j + 1]))
        w1_edges = pedges + list(reversed(eds[i:j]))
        # walk 2: shortcut path, then onward along the long arc
        w2_nodes = pnodes[:-1] + seq[j:] + seq[:i]
        w2_edges = pedges + eds[j:] + eds[:i]
        stack.append((w2_nodes, w2_edges))
        stack.append((w1_nodes, w1_edges))
    # deterministic order: shortest pieces first, then lexicographic
    out.sort(key=lambda pair: (len(pair[0]), pair[0]))
    return out


def _close_cycle(
    s_adj: list[list[tuple[int, int]]], x: int, y: int, back_edge: int
) -> tuple[list[int], list[int]]:
    # shortest x..y path inside the traversed subgraph, then close with the back edge
    parent: dict[int, tuple[int, int]] = {x: (-1, -1)}
    q = deque([x])
    while q:
        a = q.popleft()
        for b, k in s_adj[a]:
            if b in parent:
                continue
            parent[b] = (a, k)
            if b == y:
                nodes = [y]
                edges: list[int] = []
                cur = y
                while cur != x:
                    pa, pk = parent[cur]
                    edges.append(pk)
                    nodes.append(pa)
                    cur = pa
                nodes.reverse()
                edges.reverse()
                return nodes, edges + [back_edge]
            q.append(b)
    raise AssertionError("back-edge endpoints are disconnected in the traversed subgraph")


# ---------------------------------------------------------------------------
# public structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    """Simple closed alternating walk in the bipartite graph.

    ``nodes[i]`` connects to ``nodes[i + 1]`` (cyclically) through
    ``edges[i]``; edges are stored as (vertex, hyperedge) pairs.  Length 4
    cycles are the minimal ones.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_minimal(self) -> bool:
        return len(self.edges) == 4

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def node_set(self) -> frozenset[str]:
        return frozenset(self.nodes)


def _canonical_cycle(node_seq: Sequence[str], primal: frozenset[str]) -> Cycle:
    """Rotate/reflect a node sequence into canonical form and derive edges."""
    n = len(node_seq)
    start = min(range(n), key=lambda i: node_seq[i])
    forward = node_seq[(start + 1) % n]
    backward = node_seq[(start - 1) % n]
    if forward <= backward:
        nodes = tuple(node_seq[(start + i) % n] for i in range(n))
    else:
        nodes = tuple(node_seq[(start - i) % n] for i in range(n))
    edges = []
    for i in range(n):
        a, b = nodes[i], nodes[(i + 1) % n]
        edges.append((a, b) if a in primal else (b, a))
    return Cycle(nodes=nodes, edges=tuple(edges))


@dataclass(frozen=True)
class Block:
    """A block from the raw decomposition: a single edge or 2-connected."""

    nodes: frozenset[str]
    edges: tuple[Edge, ...]

    @property
    def is_single_edge(self) -> bool:
        return len(self.edges) == 1


@dataclass(frozen=True)
class TopologicalBlock:
    """Multi-edge block together with its tight cycle basis."""

    id: str
    nodes: frozenset[str]
    edges: tuple[Edge, ...]
    basis: tuple[Cycle, ...]
    betti1: int
    entanglement: Fraction


@dataclass(frozen=True)
class TreeStructure:
    """Bridge or branch: a tree of single-edge blocks.

    ``roots`` lists (node id, owning block id) pairs; the owning block id is
    ``None`` for the synthetic center root of a component that has no blocks
    at all.  ``depth`` comes from a multi-source breadth-first search out of
    the roots; ``depth_low[x]`` is the deepest depth reached below ``x`` and
    equals the tree height on every root.
    """

    id: str
    kind: str  # "bridge" | "branch"
    nodes: frozenset[str]
    edges: tuple[Edge, ...]
    roots: tuple[tuple[str, Optional[str]], ...]
    depth: dict[str, int]
    depth_low: dict[str, int]
    height: int


@dataclass(frozen=True)
class TopologicalDecomposition:
    """Edge-disjoint partition of the bipartite graph into blocks and trees."""

    graph: BipartiteGraph
    blocks: tuple[TopologicalBlock, ...]
    trees: tuple[TreeStructure, ...]
    edge_structure: dict[Edge, str]

    def structure(self, sid: str) -> TopologicalBlock | TreeStructure:
        for b in self.blocks:
            if b.id == sid:
                return b
        for t in self.trees:
            if t.id == sid:
                return t
        raise KeyError(sid)

    def betti(self) -> tuple[int, int]:
        return betti_numbers(self.graph)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def _indexed(g: BipartiteGraph) -> tuple[IndexedGraph, tuple[str, ...]]:
    order = g.node_order()
    index = {x: i for i, x in enumerate(order)}
    edges = [(index[v], index[e]) for v, e in g.edges]
    return IndexedGraph(len(order), edges), order


def betti_numbers(g: BipartiteGraph) -> tuple[int, int]:
    """(number of connected components, number of independent cycles)."""
    ig, _ = _indexed(g)
    seen = [False] * ig.n
    b0 = 0
    for s in range(ig.n):
        if seen[s]:
            continue
        b0 += 1
        seen[s] = True
        q = deque([s])
        while q:
            x = q.popleft()
            for y, _k in ig.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    q.append(y)
    b1 = b0 + ig.m - ig.n
    return b0, b1


def entanglement(structure: TopologicalBlock | TreeStructure) -> Fraction:
    """Cycle density of a structure: independent cycles per node; 0 for trees."""
    if isinstance(structure, TopologicalBlock):
        return structure.entanglement
    return Fraction(0)


def block_decomposition(g: BipartiteGraph) -> tuple[list[Block], frozenset[str]]:
    """All blocks of ``g`` plus its articulation nodes.

    Articulation nodes are exactly the nodes belonging to two or more
    blocks.  Components are processed independently, so disconnected input
    is fine; isolated nodes belong to no block.
    """
    ig, order = _indexed(g)
    raw = biconnected_components(ig)
    blocks = []
    membership: dict[str, int] = {}
    for edge_idxs in raw:
        pairs = tuple(sorted(g.edges[k] for k in edge_idxs))
        nodes = frozenset(x for pair in pairs for x in pair)
        blocks.append(Block(nodes=nodes, edges=pairs))
        for x in nodes:
            membership[x] = membership.get(x, 0) + 1
    blocks.sort(key=lambda b: b.edges[0])
    articulation = frozenset(x for x, c in membership.items() if c >= 2)
    return blocks, articulation


def tight_cycle_basis(edges: Iterable[Edge]) -> list[Cycle]:
    """Tight cycle basis of a connected block subgraph.

    ``edges`` are (vertex, hyperedge) incidence pairs.  Returns exactly
    ``|edges| - |nodes| + 1`` cycles, each tight, linearly independent over
    GF(2), and deterministic for a fixed edge set.
    """
    pairs = sorted(set(edges))
    if not pairs:
        return []
    nodes = sorted({x for pair in pairs for x in pair})
    index = {x: i for i, x in enumerate(nodes)}
    primal = frozenset(v for v, _e in pairs)
    ig = IndexedGraph(len(nodes), [(index[v], index[e]) for v, e in pairs])
    out = []
    for node_seq, _edge_seq in tight_cycle_basis_indexed(ig):
        out.append(_canonical_cycle([nodes[i] for i in node_seq], primal))
    return out


def _tree_center(nodes: list[str], adj: dict[str, set[str]]) -> str:
    """Center of a tree by repeated leaf stripping; lowest id wins ties."""
    remaining = {x: set(ns) for x, ns in adj.items() if x in nodes}
    alive = set(nodes)
    while len(alive) > 2:
        leaves = [x for x in alive if len(remaining[x]) <= 1]
        for x in leaves:
            alive.discard(x)
            for y in remaining[x]:
                remaining[y].discard(x)
            remaining[x].clear()
    return min(alive)


def _tree_depths(
    nodes: frozenset[str], edges: Sequence[Edge], sources: Sequence[str]
) -> tuple[dict[str, int], dict[str, int], int]:
    adj: dict[str, list[str]] = {x: [] for x in nodes}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    for lst in adj.values():
        lst.sort()
    depth = {s: 0 for s in sources}
    parent: dict[str, str] = {}
    order = []
    q = deque(sorted(sources))
    while q:
        x = q.popleft()
        order.append(x)
        for y in adj[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                parent[y] = x
                q.append(y)
    height = max(depth.values(), default=0)
    low = dict(depth)
    for x in reversed(order):
        p = parent.get(x)
        if p is not None and low[x] > low[p]:
            low[p] = low[x]
    for s in sources:
        low[s] = height
    return depth, low, height


def topological_decomposition(g: BipartiteGraph) -> TopologicalDecomposition:
    """Partition ``g`` into topological blocks, bridges and branches.

    Multi-edge blocks become topological blocks (with their tight cycle
    bases).  Single-edge blocks are grouped into trees: two of them belong
    to the same tree when they are connected through nodes that lie in no
    multi-edge block.  A tree rooted in one block is a branch, in two or
    more a bridge.  A component without any block yields a single branch
    rooted at its tree center, and every isolated node becomes a zero-edge
    branch of its own.
    """
    raw_blocks, _artic = block_decomposition(g)
    multi = [b for b in raw_blocks if not b.is_single_edge]
    single_edges = sorted(b.edges[0] for b in raw_blocks if b.is_single_edge)
    block_nodes: set[str] = set()
    for b in multi:
        block_nodes.update(b.nodes)

    # group single-edge blocks into trees: union through non-block nodes
    parent = list(range(len(single_edges)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    incident: dict[str, list[int]] = {}
    for idx, (a, b) in enumerate(single_edges):
        for x in (a, b):
            if x not in block_nodes:
                incident.setdefault(x, []).append(idx)
    for idxs in incident.values():
        for other in idxs[1:]:
            union(idxs[0], other)

    groups: dict[int, list[Edge]] = {}
    for idx, pair in enumerate(single_edges):
        groups.setdefault(find(idx), []).append(pair)

    # owning block per block node (lowest block by first edge wins)
    ordered_blocks = sorted(multi, key=lambda b: b.edges[0])
    node_block: dict[str, int] = {}
    for bi, b in enumerate(ordered_blocks):
        for x in b.nodes:
            node_block.setdefault(x, bi)

    blocks: list[TopologicalBlock] = []
    for bi, b in enumerate(ordered_blocks):
        n, m = len(b.nodes), len(b.edges)
        b1 = 1 + m - n
        basis = tuple(tight_cycle_basis(b.edges))
        blocks.append(
            TopologicalBlock(
                id=f"B{bi}",
                nodes=b.nodes,
                edges=b.edges,
                basis=basis,
                betti1=b1,
                entanglement=Fraction(b1, n),
            )
        )

    trees: list[TreeStructure] = []
    tree_groups = sorted(groups.values(), key=lambda es: min(es))
    for edges in tree_groups:
        pairs = tuple(sorted(edges))
        nodes = frozenset(x for pair in pairs for x in pair)
        root_nodes = sorted(nodes & block_nodes)
        if root_nodes:
            roots = tuple((x, f"B{node_block[x]}") for x in root_nodes)
            sources = root_nodes
            kind = "bridge" if len(root_nodes) >= 2 else "branch"
        else:
            adj: dict[str, set[str]] = {x: set() for x in nodes}
            for a, b in pairs:
                adj[a].add(b)
                adj[b].add(a)
            center = _tree_center(sorted(nodes), adj)
            roots = ((center, None),)
            sources = [center]
            kind = "branch"
        depth, low, height = _tree_depths(nodes, pairs, sources)
        trees.append(
            TreeStructure(
                id="",  # assigned below once all trees are known
                kind=kind,
                nodes=nodes,
                edges=pairs,
                roots=roots,
                depth=depth,
                depth_low=low,
                height=height,
            )
        )

    # isolated nodes: zero-edge branches, reported but inert
    covered = block_nodes | {x for t in trees for x in t.nodes}
    for x in g.node_order():
        if g.degree(x) == 0 and x not in covered:
            trees.append(
                TreeStructure(
                    id="",
                    kind="branch",
                    nodes=frozenset({x}),
                    edges=(),
                    roots=(),
                    depth={x: 0},
                    depth_low={x: 0},
                    height=0,
                )
            )

    trees.sort(key=lambda t: (t.edges[0] if t.edges else (min(t.nodes), "")))
    trees = [
        TreeStructure(
            id=f"K{i}",
            kind=t.kind,
            nodes=t.nodes,
            edges=t.edges,
            roots=t.roots,
            depth=t.depth,
            depth_low=t.depth_low,
            height=t.height,
        )
        for i, t in enumerate(trees)
    ]

    edge_structure: dict[Edge, str] = {}
    for b in blocks:
        for pair in b.edges:
            edge_structure[pair] = b.id
    for t in trees:
        for pair in t.edges:
            edge_structure[pair] = t.id
    if len(edge_structure) != g.n_edges:
        raise ValidationError("decomposition does not cover the edge set exactly")

    return TopologicalDecomposition(
        graph=g,
        blocks=tuple(blocks),
        trees=tuple(trees),
        edge_structure=edge_structure,
    )


def decomposition_report(d: TopologicalDecomposition) -> dict:
    """JSON-ready summary of a decomposition."""
    b0, b1 = d.betti()
    structures = []
    for b in d.blocks:
        structures.append(
            {
                "id": b.id,
                "kind": "block",
                "nodes": sorted(b.nodes),
                "edges": [list(p) for p in b.edges],
                "roots": [],
                "betti1": b.betti1,
                "eta": float(b.entanglement),
                "basis": [[list(p) for p in c.edges] for c in b.basis],
            }
        )
    for t in d.trees:
        structures.append(
            {
                "id": t.id,
                "kind": t.kind,
                "nodes": sorted(t.nodes),
                "edges": [list(p) for p in t.edges],
                "roots": [[node, block] for node, block in t.roots],
                "betti1": 0,
                "eta": 0.0,
                "basis": [],
            }
        )
    return {
        "schema_version": 1,
        "b0": b0,
        "b1": b1,
        "structures": structures,
    }
