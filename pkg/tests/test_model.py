import random

import pytest
from hypothesis import given, settings, strategies as st

from hypersimp.model import (
    BipartiteGraph,
    Hypergraph,
    NodeRole,
    ValidationError,
    build_bipartite,
    dualize,
)
from hypersimp import fixtures

from genutil import random_hypergraph


def test_k22_bipartite_is_complete_2_2():
    g = build_bipartite(fixtures.k22())
    assert g.n_nodes == 4
    assert g.n_edges == 4
    # isomorphic to complete bipartite K22: both primal nodes meet both duals
    assert set(g.neighbors("u")) == {"e", "f"}
    assert set(g.neighbors("v")) == {"e", "f"}


def test_single_hyperedge_bipartite():
    h = Hypergraph(vertices=frozenset({"a"}), hyperedges={"e": frozenset({"a"})})
    g = build_bipartite(h)
    assert g.n_nodes == 2
    assert g.n_edges == 1


def test_theta_incidence_count():
    h = fixtures.theta()
    g = build_bipartite(h)
    assert g.n_nodes == 6
    # oracle: count incidences directly from the hyperedge map
    assert g.n_edges == sum(len(m) for m in h.hyperedges.values()) == 7


def test_incidence_sum_identity():
    rng = random.Random(7)
    for _ in range(50):
        h = random_hypergraph(rng)
        g = build_bipartite(h)
        assert sum(h.degree(v) for v in h.vertices) == g.n_edges
        assert sum(h.cardinality(e) for e in h.hyperedges) == g.n_edges


def test_validation_empty_hyperedge():
    with pytest.raises(ValidationError, match="'e'"):
        Hypergraph(vertices=frozenset({"a"}), hyperedges={"e": frozenset()})


def test_validation_unknown_vertex():
    with pytest.raises(ValidationError, match="'b'"):
        Hypergraph(vertices=frozenset({"a"}), hyperedges={"e": frozenset({"a", "b"})})


def test_validation_namespace_overlap():
    with pytest.raises(ValidationError, match="'x'"):
        Hypergraph(vertices=frozenset({"x"}), hyperedges={"x": frozenset({"x"})})


def test_parallel_hyperedges_kept():
    h = fixtures.k22()
    assert h.hyperedges["e"] == h.hyperedges["f"]
    assert h.n_hyperedges == 2


def test_dualize_k22_self_dual():
    h = fixtures.k22()
    hd = dualize(h)
    assert hd.n_vertices == 2 and hd.n_hyperedges == 2
    assert all(len(m) == 2 for m in hd.hyperedges.values())


def test_dualize_involution_and_roleswap():
    rng = random.Random(11)
    for _ in range(30):
        h = random_hypergraph(rng)
        hd = dualize(h)
        assert dualize(hd) == h
        assert build_bipartite(hd) == build_bipartite(h).role_swapped()


def test_dualize_b32_gives_b23():
    hd = dualize(fixtures.b32())
    # three hyperedges (a, b, c) over two vertices (e, f)
    assert hd.vertices == frozenset({"e", "f"})
    assert set(hd.hyperedges) == {"a", "b", "c"}
    assert all(m == frozenset({"e", "f"}) for m in hd.hyperedges.values())


def test_dualize_single():
    h = Hypergraph(vertices=frozenset({"a"}), hyperedges={"e": frozenset({"a"})})
    hd = dualize(h)
    assert hd.vertices == frozenset({"e"})
    assert hd.hyperedges == {"a": frozenset({"e"})}


def test_dualize_rejects_isolated_vertex():
    h = Hypergraph(vertices=frozenset({"a", "b"}), hyperedges={"e": frozenset({"a"})})
    with pytest.raises(ValidationError, match="'b'"):
        dualize(h)


def test_bipartite_roles_and_validation():
    g = build_bipartite(fixtures.theta())
    assert g.role("u") is NodeRole.PRIMAL
    assert g.role("w") is NodeRole.DUAL
    with pytest.raises(ValidationError):
        g.role("nope")
    with pytest.raises(ValidationError):
        BipartiteGraph(primal_nodes=("a",), dual_nodes=("b",), edges=(("b", "a"),))


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 9))
def test_bipartite_edge_set_matches_incidence(seed):
    h = random_hypergraph(random.Random(seed), connected=False, isolated_prob=0.2)
    g = build_bipartite(h)
    expected = {(v, e) for e, members in h.hyperedges.items() for v in members}
    assert set(g.edges) == expected
    assert set(g.primal_nodes) == set(h.vertices)
    assert set(g.dual_nodes) == set(h.hyperedges)
