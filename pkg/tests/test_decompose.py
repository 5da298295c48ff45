import random
from fractions import Fraction

from hypersimp.decompose import (
    betti_numbers,
    block_decomposition,
    entanglement,
    tight_cycle_basis,
    topological_decomposition,
)
from hypersimp.model import Hypergraph, build_bipartite
from hypersimp import fixtures

from genutil import random_hypergraph, random_tree_hypergraph
from oracles import (
    articulation_nodes_by_deletion,
    cycle_is_tight,
    cycle_vectors,
    gf2_rank,
)


def path5_graph():
    # five-node bipartite path: v0 - e0 - v1 - e1 - v2
    return build_bipartite(
        Hypergraph(
            vertices=frozenset({"v0", "v1", "v2"}),
            hyperedges={"e0": frozenset({"v0", "v1"}), "e1": frozenset({"v1", "v2"})},
        )
    )


# -- block decomposition -----------------------------------------------------

def test_blocks_k22_single_multiedge_block():
    blocks, artic = block_decomposition(build_bipartite(fixtures.k22()))
    assert len(blocks) == 1
    assert len(blocks[0].edges) == 4
    assert artic == frozenset()


def test_blocks_pathbranch():
    g = build_bipartite(fixtures.pathbranch())
    blocks, artic = block_decomposition(g)
    multi = [b for b in blocks if not b.is_single_edge]
    single = sorted(b.edges[0] for b in blocks if b.is_single_edge)
    assert len(multi) == 1 and len(multi[0].edges) == 4
    assert single == [("c", "g"), ("c", "h"), ("d", "h"), ("v", "g"), ("v", "m")]
    # oracle: articulation nodes by node-deletion connectivity
    assert artic == frozenset(articulation_nodes_by_deletion(g))


def test_blocks_path_is_all_single_edges():
    blocks, artic = block_decomposition(path5_graph())
    assert all(b.is_single_edge for b in blocks)
    assert len(blocks) == 4
    assert artic == frozenset({"e0", "v1", "e1"})


def test_blocks_articulation_matches_oracle_on_random_graphs():
    rng = random.Random(5)
    for _ in range(25):
        g = build_bipartite(random_hypergraph(rng, max_vertices=8, max_hyperedges=6))
        _, artic = block_decomposition(g)
        assert artic == frozenset(articulation_nodes_by_deletion(g))


# -- tight cycle basis --------------------------------------------------------

def test_theta_basis_exact():
    g = build_bipartite(fixtures.theta())
    basis = tight_cycle_basis(g.edges)
    node_sets = sorted(sorted(c.nodes) for c in basis)
    assert node_sets == [["e", "u", "v", "w"], ["f", "t", "u", "w"]]
    assert all(c.length == 4 for c in basis)


def test_k22_basis_single_minimal():
    g = build_bipartite(fixtures.k22())
    basis = tight_cycle_basis(g.edges)
    assert len(basis) == 1
    assert basis[0].is_minimal


def test_sv3_basis_three_minimal_cycles_through_v0():
    g = build_bipartite(fixtures.sv3())
    basis = tight_cycle_basis(g.edges)
    assert len(basis) == 3  # 1 + 9 - 7
    assert all(c.is_minimal for c in basis)
    assert all("v0" in c.nodes for c in basis)
    rank = gf2_rank(cycle_vectors([c.edges for c in basis], g.edges))
    assert rank == 3


def test_basis_rank_and_tightness_on_random_corpus():
    rng = random.Random(31)
    for _ in range(40):
        h = random_hypergraph(rng, max_vertices=12, max_hyperedges=10)
        d = topological_decomposition(build_bipartite(h))
        for block in d.blocks:
            assert len(block.basis) == block.betti1
            vectors = cycle_vectors([c.edges for c in block.basis], block.edges)
            assert gf2_rank(vectors) == block.betti1
            for c in block.basis:
                assert cycle_is_tight(c.nodes, block.edges)


def test_cycle_alternates_roles():
    g = build_bipartite(fixtures.sv3())
    for c in tight_cycle_basis(g.edges):
        primal = {v for v, _ in c.edges}
        for i, x in enumerate(c.nodes):
            assert (x in primal) == (i % 2 == 0 if c.nodes[0] in primal else i % 2 == 1)


# -- betti numbers and entanglement -------------------------------------------

def test_betti_theta():
    assert betti_numbers(build_bipartite(fixtures.theta())) == (1, 2)


def test_betti_tree_zero():
    h = random_tree_hypergraph(random.Random(3))
    g = build_bipartite(h)
    assert betti_numbers(g) == (1, 0)
    d = topological_decomposition(g)
    assert d.blocks == ()
    assert all(entanglement(t) == 0 for t in d.trees)


def test_betti_svstar3():
    assert betti_numbers(build_bipartite(fixtures.svstar3())) == (1, 3)


def test_entanglement_block():
    d = topological_decomposition(build_bipartite(fixtures.k22()))
    assert entanglement(d.blocks[0]) == Fraction(1, 4)


# -- topological decomposition -------------------------------------------------

def test_bridge3_tree_is_bridge_with_three_roots():
    d = topological_decomposition(build_bipartite(fixtures.bridge3()))
    assert len(d.blocks) == 3
    assert len(d.trees) == 1
    tree = d.trees[0]
    assert tree.kind == "bridge"
    roots = {node for node, _ in tree.roots}
    assert roots == {"v1", "v2", "v3"}
    owning = {block for _, block in tree.roots}
    assert len(owning) == 3


def test_pathbranch_decomposition():
    d = topological_decomposition(build_bipartite(fixtures.pathbranch()))
    assert len(d.blocks) == 1
    assert d.blocks[0].nodes == frozenset({"u", "v", "e", "f"})
    assert len(d.trees) == 2
    by_nodes = sorted(d.trees, key=lambda t: len(t.nodes))
    monogon, chain = by_nodes
    assert monogon.nodes == frozenset({"v", "m"})
    assert chain.nodes == frozenset({"v", "g", "c", "h", "d"})
    for t in d.trees:
        assert t.kind == "branch"
        assert [node for node, _ in t.roots] == ["v"]
    # depth maps: chain v=0,g=1,c=2,h=3,d=4 ; height 4 ; root depth_low = height
    assert chain.depth == {"v": 0, "g": 1, "c": 2, "h": 3, "d": 4}
    assert chain.depth_low["d"] == 4 and chain.depth_low["v"] == 4
    assert monogon.depth == {"v": 0, "m": 1}
    assert monogon.depth_low == {"v": 1, "m": 1}


def test_triangle6_single_block_no_trees():
    d = topological_decomposition(build_bipartite(fixtures.triangle6()))
    assert len(d.blocks) == 1
    assert d.trees == ()
    assert d.blocks[0].betti1 == 1


def test_pure_tree_yields_center_rooted_branch():
    g = path5_graph()
    d = topological_decomposition(g)
    assert d.blocks == ()
    assert len(d.trees) == 1
    tree = d.trees[0]
    assert tree.kind == "branch"
    assert tree.roots == (("v1", None),)  # path center
    assert tree.height == 2


def test_isolated_vertex_becomes_zero_edge_branch():
    h = Hypergraph(
        vertices=frozenset({"a", "b", "z"}),
        hyperedges={"e": frozenset({"a", "b"})},
    )
    d = topological_decomposition(build_bipartite(h))
    zero = [t for t in d.trees if not t.edges]
    assert len(zero) == 1
    assert zero[0].nodes == frozenset({"z"})
    assert zero[0].roots == ()


def test_edge_disjoint_cover_on_random_corpus():
    rng = random.Random(17)
    for _ in range(40):
        h = random_hypergraph(rng, connected=False, isolated_prob=0.1)
        g = build_bipartite(h)
        d = topological_decomposition(g)
        counts: dict = {}
        for b in d.blocks:
            for e in b.edges:
                counts[e] = counts.get(e, 0) + 1
        for t in d.trees:
            for e in t.edges:
                counts[e] = counts.get(e, 0) + 1
        assert counts == {e: 1 for e in g.edges}
        for t in d.trees:
            if not t.edges:
                continue
            owning = [blk for _, blk in t.roots if blk is not None]
            if t.kind == "bridge":
                assert len(t.roots) >= 2
                assert len(set(owning)) == len(owning)
            else:
                assert len(t.roots) == 1
            for node, _ in t.roots:
                assert t.depth[node] == 0
                assert t.depth_low[node] == t.height


def test_no_two_trees_connect_same_block_pair():
    rng = random.Random(41)
    for _ in range(40):
        h = random_hypergraph(rng, max_vertices=15, max_hyperedges=12)
        d = topological_decomposition(build_bipartite(h))
        seen_pairs = set()
        for t in d.trees:
            owning = sorted(blk for _, blk in t.roots if blk is not None)
            for i in range(len(owning)):
                for j in range(i + 1, len(owning)):
                    pair = (owning[i], owning[j])
                    assert pair not in seen_pairs
                    seen_pairs.add(pair)


def test_leaf_depth_low_equals_depth():
    rng = random.Random(9)
    for _ in range(20):
        h = random_tree_hypergraph(rng)
        d = topological_decomposition(build_bipartite(h))
        for t in d.trees:
            degree: dict = {}
            for a, b in t.edges:
                degree[a] = degree.get(a, 0) + 1
                degree[b] = degree.get(b, 0) + 1
            roots = {n for n, _ in t.roots}
            for x in t.nodes:
                if degree.get(x, 0) == 1 and x not in roots:
                    assert t.depth_low[x] == t.depth[x]
