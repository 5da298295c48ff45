"""Canonical small hypergraphs used throughout the test suite and docs.

Each fixture isolates one structural situation: the minimal cycle (K22),
a plain 6-cycle (TRIANGLE6), two cycles sharing a path (THETA), the two
adjacency bundles (B32/B23), the strangled vertex/hyperedge cycle and star
variants (SV3/SH3, SVSTAR3/SHSTAR3), and a block with attached branches and
a monogon (PATHBRANCH).
"""
from __future__ import annotations

from .model import Hypergraph, dualize


def _hg(edges: dict[str, set[str]], extra_vertices: set[str] | None = None) -> Hypergraph:
    vertices = set().union(*edges.values()) | (extra_vertices or set())
    return Hypergraph(
        vertices=frozenset(vertices),
        hyperedges={e: frozenset(m) for e, m in edges.items()},
    )


def k22() -> Hypergraph:
    """Two vertices shared by two parallel hyperedges: the minimal cycle."""
    return _hg({"e": {"u", "v"}, "f": {"u", "v"}})


def triangle6() -> Hypergraph:
    """Three vertices and three 2-ary hyperedges forming a single 6-cycle."""
    return _hg({"e1": {"v1", "v2"}, "e2": {"v2", "v3"}, "e3": {"v3", "v1"}})


def theta() -> Hypergraph:
    """Two tight 4-cycles sharing one vertex; also contains a loose 6-cycle."""
    return _hg({"w": {"u", "v", "t"}, "e": {"u", "v"}, "f": {"u", "t"}})


def b32() -> Hypergraph:
    """3-adjacent bundle of 2 hyperedges (two hyperedges sharing 3 vertices)."""
    return _hg({"e": {"a", "b", "c"}, "f": {"a", "b", "c"}})


def b23() -> Hypergraph:
    """2-adjacent bundle of 3 hyperedges (three hyperedges sharing 2 vertices)."""
    return _hg({"e": {"a", "b"}, "f": {"a", "b"}, "g": {"a", "b"}})


def sv3() -> Hypergraph:
    """Strangled vertex, cycle variant: v0 sits inside a 3-cycle of its neighbors."""
    return _hg(
        {
            "e1": {"v0", "v1", "v2"},
            "e2": {"v0", "v2", "v3"},
            "e3": {"v0", "v3", "v1"},
        }
    )


def sh3() -> Hypergraph:
    """Strangled hyperedge, cycle variant: the dual of :func:`sv3`."""
    return dualize(sv3())


def svstar3() -> Hypergraph:
    """Strangled vertex, star variant: three spokes around a central hyperedge."""
    return _hg(
        {
            "e0": {"v0", "v1", "v2", "v3"},
            "e1": {"v0", "v1"},
            "e2": {"v0", "v2"},
            "e3": {"v0", "v3"},
        }
    )


def shstar3() -> Hypergraph:
    """Strangled hyperedge, star variant: the dual of :func:`svstar3`."""
    return dualize(svstar3())


def pathbranch() -> Hypergraph:
    """A K22 block with a 4-edge chain branch and a monogon branch, both at v."""
    return _hg(
        {
            "e": {"u", "v"},
            "f": {"u", "v"},
            "g": {"v", "c"},
            "h": {"c", "d"},
            "m": {"v"},
        }
    )


def bridge3() -> Hypergraph:
    """Three K22 blocks joined by one tree that roots in all three of them."""
    edges: dict[str, set[str]] = {}
    for i in (1, 2, 3):
        edges[f"e{i}"] = {f"u{i}", f"v{i}"}
        edges[f"f{i}"] = {f"u{i}", f"v{i}"}
    edges["t"] = {"v1", "v2", "v3"}
    return _hg(edges)


def twocluster() -> Hypergraph:
    """One block whose minimal-cycle adjacency splits into two clusters.

    Two 2-adjacent bundles joined into a single 2-connected block by a pair
    of long connecting hyperedges.
    """
    return _hg(
        {
            "e1": {"a", "b"},
            "e2": {"a", "b"},
            "e3": {"a", "b"},
            "f1": {"c", "d"},
            "f2": {"c", "d"},
            "f3": {"c", "d"},
            "p": {"b", "c"},
            "q": {"a", "d"},
        }
    )


FIXTURES = {
    "K22": k22,
    "TRIANGLE6": triangle6,
    "THETA": theta,
    "B32": b32,
    "B23": b23,
    "SV3": sv3,
    "SH3": sh3,
    "SVSTAR3": svstar3,
    "SHSTAR3": shstar3,
    "PATHBRANCH": pathbranch,
    "BRIDGE3": bridge3,
    "TWOCLUSTER": twocluster,
}
