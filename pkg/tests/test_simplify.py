import random

import pytest

from hypersimp.decompose import tight_cycle_basis, topological_decomposition
from hypersimp.forbidden import block_forbidden
from hypersimp.model import Hypergraph, build_bipartite
from hypersimp.planarity import contract_clusters, find_crossings, is_convex_polygon_planar
from hypersimp.simplify import (
    COLLAPSE,
    CUT,
    PRUNE,
    OperationRejected,
    OpLog,
    PriorityContext,
    PriorityParams,
    SimplificationOp,
    SimplificationState,
    StaleOperationError,
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
    update_basis_after_collapse,
    update_basis_after_cut,
)
from hypersimp import fixtures

from genutil import random_hypergraph, random_nonplanar_hypergraph, random_tree_hypergraph
from oracles import cycle_vectors, gf2_rank


def block_of(h):
    d = topological_decomposition(build_bipartite(h))
    assert len(d.blocks) == 1
    return d.blocks[0]


def topo_params():
    return PriorityParams(alpha=0.0, beta=0.0, gamma=0.0, delta=1.0)


# -- candidate generation ------------------------------------------------------

def test_b23_four_collapse_candidates():
    block = block_of(fixtures.b23())
    _clusters, records = block_forbidden(block)
    assert len(records) == 1
    cands = candidate_collapses(block, records)
    assert len(cands) == 4  # 2 member cycles x 2 merge directions
    assert {c.operands for c in cands} == {("a", "b"), ("e", "f"), ("e", "g")}


def test_theta_no_collapse_candidates():
    block = block_of(fixtures.theta())
    _clusters, records = block_forbidden(block)
    assert records == []
    assert candidate_collapses(block, records) == []


def test_sv3_six_collapse_candidates():
    block = block_of(fixtures.sv3())
    _clusters, records = block_forbidden(block)
    cands = candidate_collapses(block, records)
    assert len(cands) == 6


def test_cut_candidates_planar_empty():
    block = block_of(fixtures.theta())
    contracted = contract_clusters(block, [])
    crossings = find_crossings(contracted.graph)
    assert candidate_cuts(block, crossings, contracted) == []


def test_cut_candidates_two_per_crossing():
    h = Hypergraph(
        vertices=frozenset({"a", "b", "c"}),
        hyperedges={
            "e": frozenset({"a", "b", "c"}),
            "f": frozenset({"a", "b", "c"}),
            "g": frozenset({"a", "b", "c"}),
        },
    )
    block = block_of(h)
    clusters, _records = block_forbidden(block)
    contracted = contract_clusters(block, clusters)
    crossings = find_crossings(contracted.graph)
    cands = candidate_cuts(block, crossings, contracted)
    assert len(cands) == 2 * len(crossings)
    for c in cands:
        assert c.operands in set(block.edges)


def test_prune_candidates_pathbranch():
    d = topological_decomposition(build_bipartite(fixtures.pathbranch()))
    chain = next(t for t in d.trees if len(t.nodes) == 5)
    monogon = next(t for t in d.trees if len(t.nodes) == 2)
    chain_cands = candidate_prunes(chain)
    assert [c.operands[0] for c in chain_cands] == ["d"]
    mono_cands = candidate_prunes(monogon)
    assert [c.operands[0] for c in mono_cands] == ["m"]


def test_prune_candidates_bridge_path_empty():
    # two K22 blocks joined by a path bridge: every tree node is on the
    # root-to-root path, so there is no leaf to prune
    h = Hypergraph(
        vertices=frozenset({"u1", "v1", "u2", "v2", "x"}),
        hyperedges={
            "e1": frozenset({"u1", "v1"}),
            "f1": frozenset({"u1", "v1"}),
            "e2": frozenset({"u2", "v2"}),
            "f2": frozenset({"u2", "v2"}),
            "p": frozenset({"v1", "x"}),
            "q": frozenset({"x", "v2"}),
        },
    )
    d = topological_decomposition(build_bipartite(h))
    bridges = [t for t in d.trees if t.kind == "bridge"]
    assert len(bridges) == 1
    assert candidate_prunes(bridges[0]) == []


# -- priority values -------------------------------------------------------------

def test_priority_theta_cut_topology_term():
    block = block_of(fixtures.theta())
    ctx = PriorityContext.for_block(block.edges, block.basis)
    op = SimplificationOp(kind=CUT, operands=("u", "w"), structure=block.id)
    p = priority(op, topo_params(), ctx)
    assert p == pytest.approx(0.75)  # s=2 cycles, mean length 4


def test_priority_b23_collapse_dual_pair():
    block = block_of(fixtures.b23())
    ctx = PriorityContext.for_block(block.edges, block.basis)
    op = SimplificationOp(kind=COLLAPSE, operands=("e", "f"), structure=block.id,
                          cycle=("a", "e", "b", "f"))
    p = priority(op, topo_params(), ctx)
    assert p == pytest.approx(1.25)  # s=1, l=4


def test_priority_prune_depth_terms():
    # the two branches share root v; the topology term uses the tallest
    # tree rooted there (height 4)
    d = topological_decomposition(build_bipartite(fixtures.pathbranch()))
    chain = next(t for t in d.trees if len(t.nodes) == 5)
    monogon = next(t for t in d.trees if len(t.nodes) == 2)
    shared_height = max(chain.height, monogon.height)
    ctx_chain = PriorityContext.for_tree(chain.edges, chain.depth, chain.depth_low, shared_height)
    ctx_mono = PriorityContext.for_tree(monogon.edges, monogon.depth, monogon.depth_low, shared_height)
    p_d = priority(SimplificationOp(kind=PRUNE, operands=("d", "h"), structure=chain.id),
                   topo_params(), ctx_chain)
    p_m = priority(SimplificationOp(kind=PRUNE, operands=("m", "v"), structure=monogon.id),
                   topo_params(), ctx_mono)
    assert p_d == pytest.approx(0.0)
    assert p_m == pytest.approx(0.75)


def test_priority_requires_cycle_membership():
    block = block_of(fixtures.pathbranch())
    ctx = PriorityContext.for_block(block.edges, block.basis)
    bogus = SimplificationOp(kind=CUT, operands=("c", "g"), structure=block.id)
    with pytest.raises(ValueError):
        priority(bogus, topo_params(), ctx)


def test_score_candidates_deterministic_order():
    block = block_of(fixtures.b23())
    _c, records = block_forbidden(block)
    cands = candidate_collapses(block, records)
    params = PriorityParams()
    ctx = PriorityContext.for_block(block.edges, block.basis)
    once = [o.operands for o in score_candidates(cands, params, ctx)]
    ctx2 = PriorityContext.for_block(block.edges, block.basis)
    again = [o.operands for o in score_candidates(cands, params, ctx2)]
    assert once == again
    priorities = [o.priority for o in score_candidates(cands, params, ctx)]
    assert priorities == sorted(priorities, reverse=True)


# -- apply: collapse ---------------------------------------------------------------

def test_apply_collapse_theta_monogon():
    state = SimplificationState(fixtures.theta())
    op = SimplificationOp(kind=COLLAPSE, operands=("u", "v"), structure="B0",
                          cycle=("e", "u", "w", "v"))
    rec = apply_collapse(state, op)
    assert (rec.b1_before, rec.b1_after) == (2, 1)
    assert rec.merged_id == "u+v"
    assert state.hyperedges["e"] == {"u+v"}  # the 2-ary hyperedge became a monogon


def test_apply_collapse_b23_primal_kills_both_cycles():
    state = SimplificationState(fixtures.b23())
    op = SimplificationOp(kind=COLLAPSE, operands=("a", "b"), structure="B0",
                          cycle=("a", "e", "b", "f"))
    rec = apply_collapse(state, op)
    assert rec.delta_b1 == -2  # s = 2 minimal basis cycles through (a, b)
    assert rec.b0_after == rec.b0_before


def test_apply_collapse_b23_dual_kills_one_cycle():
    state = SimplificationState(fixtures.b23())
    op = SimplificationOp(kind=COLLAPSE, operands=("e", "f"), structure="B0",
                          cycle=("a", "e", "b", "f"))
    rec = apply_collapse(state, op)
    assert rec.delta_b1 == -1
    assert state.hyperedges["e+f"] == {"a", "b"}


def test_apply_collapse_stale():
    state = SimplificationState(fixtures.theta())
    op = SimplificationOp(kind=COLLAPSE, operands=("u", "v"), structure="B0",
                          cycle=("e", "u", "w", "v"))
    apply_collapse(state, op)
    with pytest.raises(StaleOperationError):
        apply_collapse(state, op)


# -- apply: cut ----------------------------------------------------------------------

def test_apply_cut_theta():
    state = SimplificationState(fixtures.theta())
    op = SimplificationOp(kind=CUT, operands=("u", "w"), structure="B0")
    rec = apply_cut(state, op)
    assert (rec.b1_before, rec.b1_after) == (2, 1)
    assert rec.b0_after == rec.b0_before == 1
    assert rec.annotation == ("u", "w")
    # the surviving independent cycle is the 6-cycle
    basis = tight_cycle_basis(build_bipartite(state.snapshot()).edges)
    assert [c.length for c in basis] == [6]


def test_apply_cut_triangle6_yields_tree():
    state = SimplificationState(fixtures.triangle6())
    op = SimplificationOp(kind=CUT, operands=("v1", "e1"), structure="B0")
    rec = apply_cut(state, op)
    assert (rec.b1_before, rec.b1_after) == (1, 0)


def test_apply_cut_bridge_edge_rejected():
    state = SimplificationState(fixtures.pathbranch())
    op = SimplificationOp(kind=CUT, operands=("c", "g"), structure="K0")
    with pytest.raises(OperationRejected):
        apply_cut(state, op)
    assert state.has_incidence("c", "g")  # restored


# -- apply: prune ---------------------------------------------------------------------

def test_apply_prune_vertex_leaf():
    state = SimplificationState(fixtures.pathbranch())
    rec = apply_prune(state, SimplificationOp(kind=PRUNE, operands=("d", "h"), structure="K0"))
    assert rec.delta_b1 == 0
    assert rec.b0_after == rec.b0_before
    assert not state.exists("d")
    assert state.degree("h") == 1  # h is now a leaf hyperedge


def test_apply_prune_monogon_hyperedge():
    state = SimplificationState(fixtures.pathbranch())
    before = state.degree("v")
    rec = apply_prune(state, SimplificationOp(kind=PRUNE, operands=("m", "v"), structure="K1"))
    assert not state.exists("m")
    assert state.degree("v") == before - 1
    assert rec.delta_b1 == 0


def test_apply_prune_cascade_removes_empty_hyperedge():
    h = Hypergraph(vertices=frozenset({"v"}), hyperedges={"m": frozenset({"v"})})
    state = SimplificationState(h)
    rec = apply_prune(state, SimplificationOp(kind=PRUNE, operands=("v", "m"), structure="K0"))
    assert rec.cascaded == ("m",)
    assert state.snapshot() == Hypergraph(vertices=frozenset(), hyperedges={})


def test_apply_prune_stale_after_parent_change():
    state = SimplificationState(fixtures.pathbranch())
    with pytest.raises(StaleOperationError):
        apply_prune(state, SimplificationOp(kind=PRUNE, operands=("c", "g"), structure="K0"))


# -- incremental basis updates ---------------------------------------------------------

def test_update_basis_after_collapse_matches_recompute():
    h = fixtures.theta()
    block = block_of(h)
    state = SimplificationState(h)
    merged = state.merge_pair("u", "v")
    updated = update_basis_after_collapse(block.basis, "u", "v", merged)
    g2 = build_bipartite(state.snapshot())
    fresh = tight_cycle_basis(g2.edges)
    assert len(updated) == len(fresh) == 1
    rank_updated = gf2_rank(cycle_vectors([c.edges for c in updated], g2.edges))
    assert rank_updated == 1
    assert updated[0].length == 4  # the 6-cycle shortened by 2


def test_update_basis_after_cut_matches_recompute():
    h = fixtures.theta()
    block = block_of(h)
    remaining = [e for e in block.edges if e != ("u", "w")]
    updated = update_basis_after_cut(block.basis, ("u", "w"), remaining)
    assert len(updated) == 1
    assert updated[0].length == 6
    fresh = tight_cycle_basis(remaining)
    assert updated[0].edge_set() == fresh[0].edge_set()


def test_update_basis_random_agreement():
    rng = random.Random(77)
    checked = 0
    for _ in range(40):
        h = random_hypergraph(rng, max_vertices=10, max_hyperedges=8)
        d = topological_decomposition(build_bipartite(h))
        for block in d.blocks:
            if block.betti1 < 1:
                continue
            minimal = [c for c in block.basis if c.is_minimal]
            if not minimal:
                continue
            cyc = minimal[0]
            primal = sorted({v for v, _ in cyc.edges})
            state = SimplificationState(h)
            try:
                merged = state.merge_pair(primal[0], primal[1])
                updated = update_basis_after_collapse(block.basis, primal[0], primal[1], merged)
            except Exception:
                continue
            g2 = build_bipartite(state.snapshot())
            _b0, b1 = 1, 1 + g2.n_edges - g2.n_nodes
            # count only cycles inside this block's updated subgraph
            block_cycles = [c for c in updated]
            vectors = cycle_vectors(
                [c.edges for c in block_cycles],
                sorted({e for c in block_cycles for e in c.edges} | set(g2.edges)),
            )
            assert gf2_rank(vectors) == len(block_cycles)
            checked += 1
    assert checked >= 10


# -- end-to-end simplify ------------------------------------------------------------

def test_simplify_b32_one_collapse_to_planar():
    h2, log = simplify(fixtures.b32(), PriorityParams(target="planar"))
    assert len(log.records) == 1
    assert log.records[0].op.kind == COLLAPSE
    assert is_convex_polygon_planar(h2)


def test_simplify_theta_no_ops():
    h2, log = simplify(fixtures.theta(), PriorityParams(target="planar"))
    assert log.records == []
    assert h2 == fixtures.theta()


def test_simplify_all_forbidden_fixtures_to_planar():
    for name in ("B32", "B23", "SV3", "SH3", "SVSTAR3", "SHSTAR3", "TWOCLUSTER"):
        h = fixtures.FIXTURES[name]()
        h2, log = simplify(h, PriorityParams(target="planar"))
        assert is_convex_polygon_planar(h2), name
        assert len(log.records) >= 1, name


def test_simplify_nonplanar_needs_cuts():
    h = Hypergraph(
        vertices=frozenset({"a", "b", "c"}),
        hyperedges={
            "e": frozenset({"a", "b", "c"}),
            "f": frozenset({"a", "b", "c"}),
            "g": frozenset({"a", "b", "c"}),
        },
    )
    h2, log = simplify(h, PriorityParams(target="planar"))
    assert is_convex_polygon_planar(h2)


def test_simplify_eta_target():
    h = fixtures.sv3()
    h2, log = simplify(h, PriorityParams(target="eta", eta_threshold=0.2))
    d = topological_decomposition(build_bipartite(h2))
    for block in d.blocks:
        assert float(block.entanglement) <= 0.2 or is_convex_polygon_planar(h2)


def test_simplify_op_budget():
    h = fixtures.sv3()
    h2, log = simplify(h, PriorityParams(target="ops", op_budget=1))
    assert len(log.records) == 1


def test_simplify_op_budget_binds_on_larger_input():
    rng = random.Random(1234)
    h = random_nonplanar_hypergraph(rng, max_vertices=25, max_hyperedges=18)
    unlimited, full_log = simplify(h, PriorityParams(target="planar"))
    assert len(full_log.records) >= 3
    for budget in (1, 2, 3):
        _h2, log = simplify(h, PriorityParams(target="ops", op_budget=budget))
        assert len(log.records) == budget
        # the budgeted prefix matches the start of a longer budgeted run
        _h3, longer = simplify(h, PriorityParams(target="ops", op_budget=budget + 1))
        assert [r.op for r in longer.records][:budget] == [r.op for r in log.records]


def test_simplify_prune_threshold_keeps_deepest_path():
    rng = random.Random(55)
    for _ in range(15):
        h = random_tree_hypergraph(rng, max_hyperedges=10)
        d = topological_decomposition(build_bipartite(h))
        tree = d.trees[0]
        root = tree.roots[0][0]
        h2, log = simplify(
            h,
            PriorityParams(alpha=0, beta=0, gamma=0, delta=1.0,
                           target="planar", prune_threshold=0.01),
        )
        if not tree.edges:
            continue
        # a longest root-to-leaf path must survive: from the root, the
        # surviving subtree still reaches the original height
        g2 = build_bipartite(h2)
        if root not in g2.node_order():
            assert tree.height == 0
            continue
        from oracles import adjacency, bfs_distances

        dist = bfs_distances(adjacency(g2.edges), root)
        assert max(dist.values(), default=0) >= tree.height


def test_simplify_prune_requeues_parent():
    h2, log = simplify(
        fixtures.pathbranch(),
        PriorityParams(alpha=1.0, beta=0.0, gamma=0.0, delta=0.0,
                       target="planar", prune_threshold=0.0),
    )
    pruned = [r.op.operands[0] for r in log.records if r.op.kind == PRUNE]
    # the whole chain d, h, c, g disappears through re-queued parents
    assert set(pruned) >= {"d", "h", "c", "g"}


def test_simplify_log_replay_exact():
    rng = random.Random(5150)
    for _ in range(20):
        h = random_nonplanar_hypergraph(rng, max_vertices=10, max_hyperedges=8)
        h2, log = simplify(h, PriorityParams(target="planar", prune_threshold=0.1))
        assert replay(h, log) == h2


def test_simplify_deterministic():
    rng = random.Random(808)
    h = random_nonplanar_hypergraph(rng)
    a_h, a_log = simplify(h, PriorityParams(target="planar"))
    b_h, b_log = simplify(h, PriorityParams(target="planar"))
    assert a_h == b_h
    assert a_log.to_dict() == b_log.to_dict()


def test_priority_monotone_within_rounds():
    rng = random.Random(33)
    for _ in range(10):
        h = random_nonplanar_hypergraph(rng, max_vertices=10, max_hyperedges=8)
        _h2, log = simplify(h, PriorityParams(target="planar"))
        per_round: dict = {}
        for r in log.records:
            per_round.setdefault((r.op.structure, r.round), []).append(r.op.priority)
        for seq in per_round.values():
            assert seq == sorted(seq, reverse=True)


def test_oplog_round_trip():
    h = fixtures.b32()
    _h2, log = simplify(h, PriorityParams(target="planar"))
    doc = log.to_dict()
    log2 = OpLog.from_dict(doc)
    assert replay(h, log2) == replay(h, log)


def test_b1_contract_fuzz_small():
    # a collapse removes exactly the pair's independent minimal cycles: one
    # less than the number of common neighbors.  The basis can hold at most
    # that many (and usually exactly that many; overlapping bundles can make
    # full saturation of every pair impossible).
    rng = random.Random(404)
    ops_checked = 0
    for _ in range(30):
        h = random_hypergraph(rng, max_vertices=10, max_hyperedges=8)
        memberships = h.memberships()
        d = topological_decomposition(build_bipartite(h))
        for block in d.blocks:
            _clusters, records = block_forbidden(block)
            for op in candidate_collapses(block, records)[:2]:
                a, b = op.operands
                if a in h.vertices:
                    common = len(memberships[a] & memberships[b])
                else:
                    common = len(h.hyperedges[a] & h.hyperedges[b])
                s_basis = sum(
                    1
                    for c in block.basis
                    if c.is_minimal
                    and a in c.node_set()
                    and b in c.node_set()
                )
                try:
                    rec = apply_collapse(SimplificationState(h), op)
                except StaleOperationError:
                    continue
                assert rec.delta_b1 == -(common - 1)
                assert 1 <= s_basis <= common - 1
                assert rec.b0_after == rec.b0_before
                ops_checked += 1
    assert ops_checked >= 10
