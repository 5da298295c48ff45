"""Force-directed layout and SVG polygon rendering.

Hyperedges of cardinality three or more are drawn as polygons through their
vertices in angular order about the member centroid, pairs as lens shapes,
singletons as teardrop glyphs.  Removed incidences can be drawn back in as
dashed annotation segments from the vertex to the hyperedge centroid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .model import BipartiteGraph, Hypergraph, ValidationError

Edge = tuple[str, str]


class RenderError(ValueError):
    """Rendering failed, e.g. a node without a position."""


@dataclass(frozen=True)
class Layout:
    """Node positions in abstract drawing units."""

    positions: dict[str, tuple[float, float]]
    seed: int

    def bounding_box(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.positions.values()]
        ys = [p[1] for p in self.positions.values()]
        if not xs:
            return (0.0, 0.0, 1.0, 1.0)
        return (min(xs), min(ys), max(xs), max(ys))

    def to_dict(self) -> dict:
        return {k: [round(x, 6), round(y, 6)] for k, (x, y) in sorted(self.positions.items())}

    @classmethod
    def from_dict(cls, doc: Mapping[str, Sequence[float]], seed: int = 0) -> "Layout":
        return cls(positions={k: (float(v[0]), float(v[1])) for k, v in doc.items()}, seed=seed)


def force_layout(g: BipartiteGraph, seed: int = 42, iterations: int = 300) -> Layout:
    """Spring-electrical layout: repulsion falls off as 1/distance,
    attraction along edges grows with the squared distance, with a linear
    cooling schedule.  Deterministic for a fixed (graph, seed)."""
    nodes = list(g.node_order())
    n = len(nodes)
    if n == 0:
        raise ValidationError("cannot lay out an empty graph")
    if n == 1:
        return Layout(positions={nodes[0]: (0.0, 0.0)}, seed=seed)
    index = {x: i for i, x in enumerate(nodes)}
    rng = np.random.default_rng(seed)
    pos = rng.uniform(-0.5, 0.5, size=(n, 2))
    edges = np.array([[index[a], index[b]] for a, b in g.edges], dtype=int)
    k = 1.0 / math.sqrt(n)
    start_temperature = 0.5
    for it in range(iterations):
        temperature = max(start_temperature * (1.0 - it / max(iterations, 1)), 1e-4)
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=-1)
        np.fill_diagonal(dist, np.inf)
        dist = np.maximum(dist, 1e-9)
        # repulsion ~ k^2 / d
        force = (k * k / dist ** 2)[:, :, None] * delta
        disp = force.sum(axis=1)
        if len(edges):
            d = pos[edges[:, 0]] - pos[edges[:, 1]]
            dd = np.maximum(np.linalg.norm(d, axis=-1, keepdims=True), 1e-9)
            # attraction ~ d^2 / k along each edge
            pull = d / dd * (dd ** 2) / k
            np.add.at(disp, edges[:, 0], -pull)
            np.add.at(disp, edges[:, 1], pull)
        length = np.maximum(np.linalg.norm(disp, axis=-1, keepdims=True), 1e-9)
        pos = pos + disp / length * np.minimum(length, temperature)
    return Layout(
        positions={x: (float(pos[i, 0]), float(pos[i, 1])) for x, i in index.items()},
        seed=seed,
    )


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)


@dataclass(frozen=True)
class RenderSpec:
    """Visual configuration; label values starting with '#' act as fills."""

    canvas: tuple[int, int] = (800, 600)
    margin: float = 48.0
    vertex_radius: float = 4.0
    vertex_fill: str = "#1a1a1a"
    monogon_fill: str = "#8467b7"
    edge_opacity: float = 0.45
    stroke: str = "#333333"
    stroke_width: float = 1.0
    dash_pattern: str = "6,4"
    dash_stroke: str = "#888888"

    def fill_for(self, eid: str, card: int, labels: Mapping[str, str]) -> str:
        label = labels.get(eid, "")
        if label.startswith("#"):
            return label
        if card == 1:
            return self.monogon_fill
        return PALETTE[card % len(PALETTE)]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _transform(layout: Layout, spec: RenderSpec) -> dict[str, tuple[float, float]]:
    x0, y0, x1, y1 = layout.bounding_box()
    w, h = spec.canvas
    span_x = max(x1 - x0, 1e-9)
    span_y = max(y1 - y0, 1e-9)
    scale = min((w - 2 * spec.margin) / span_x, (h - 2 * spec.margin) / span_y)
    out = {}
    for node, (x, y) in layout.positions.items():
        px = spec.margin + (x - x0) * scale + (w - 2 * spec.margin - span_x * scale) / 2
        py = spec.margin + (y - y0) * scale + (h - 2 * spec.margin - span_y * scale) / 2
        out[node] = (px, py)
    return out


def _centroid(points: Sequence[tuple[float, float]]) -> tuple[float, float]:
    return (
        sum(p[0] for p in points) / len(points),
        sum(p[1] for p in points) / len(points),
    )


def _polygon_path(points: Sequence[tuple[float, float]]) -> str:
    cx, cy = _centroid(points)
    ordered = sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    coords = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in ordered)
    return coords


def _lens_path(a: tuple[float, float], b: tuple[float, float], bulge: float = 0.25) -> str:
    ax, ay = a
    bx, by = b
    mx, my = (ax + bx) / 2, (ay + by) / 2
    nx_, ny_ = -(by - ay), (bx - ax)
    c1 = (mx + nx_ * bulge, my + ny_ * bulge)
    c2 = (mx - nx_ * bulge, my - ny_ * bulge)
    return (
        f"M {_fmt(ax)},{_fmt(ay)} Q {_fmt(c1[0])},{_fmt(c1[1])} {_fmt(bx)},{_fmt(by)} "
        f"Q {_fmt(c2[0])},{_fmt(c2[1])} {_fmt(ax)},{_fmt(ay)} Z"
    )


def _teardrop_path(p: tuple[float, float], r: float = 10.0) -> str:
    x, y = p
    return (
        f"M {_fmt(x)},{_fmt(y)} "
        f"C {_fmt(x - r)},{_fmt(y - 1.6 * r)} {_fmt(x - r)},{_fmt(y - 2.4 * r)} {_fmt(x)},{_fmt(y - 2.4 * r)} "
        f"C {_fmt(x + r)},{_fmt(y - 2.4 * r)} {_fmt(x + r)},{_fmt(y - 1.6 * r)} {_fmt(x)},{_fmt(y)} Z"
    )


def render_svg(
    h: Hypergraph,
    layout: Layout,
    spec: Optional[RenderSpec] = None,
    annotations: Iterable[Edge] = (),
) -> bytes:
    """Render a hypergraph as SVG 1.1 bytes; byte deterministic.

    ``annotations`` are (vertex, hyperedge) pairs drawn as dashed segments
    from the vertex to the hyperedge centroid; both endpoints must exist.
    """
    spec = spec or RenderSpec()
    for node in sorted(h.vertices | set(h.hyperedges)):
        if node not in layout.positions:
            raise RenderError(f"no position for node {node!r}")
    pts = _transform(layout, spec)
    w, hgt = spec.canvas
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{hgt}" '
        f'viewBox="0 0 {w} {hgt}">',
        f'<rect width="{w}" height="{hgt}" fill="#ffffff"/>',
    ]
    for eid, members in sorted(h.hyperedges.items()):
        fill = spec.fill_for(eid, len(members), h.labels)
        style = (
            f'fill="{fill}" fill-opacity="{spec.edge_opacity}" '
            f'stroke="{spec.stroke}" stroke-width="{spec.stroke_width}"'
        )
        mpts = [pts[v] for v in sorted(members)]
        if len(members) >= 3:
            parts.append(f'<polygon id="edge-{eid}" points="{_polygon_path(mpts)}" {style}/>')
        elif len(members) == 2:
            parts.append(f'<path id="edge-{eid}" d="{_lens_path(mpts[0], mpts[1])}" {style}/>')
        else:
            parts.append(f'<path id="edge-{eid}" d="{_teardrop_path(mpts[0])}" {style}/>')
    for v in sorted(h.vertices):
        x, y = pts[v]
        fill = h.labels.get(v, "")
        fill = fill if fill.startswith("#") else spec.vertex_fill
        parts.append(
            f'<circle id="vertex-{v}" cx="{_fmt(x)}" cy="{_fmt(y)}" '
            f'r="{spec.vertex_radius}" fill="{fill}"/>'
        )
    for v, e in annotations:
        if v not in pts or e not in h.hyperedges:
            raise RenderError(f"annotation ({v!r}, {e!r}) references a missing element")
        target = _centroid([pts[x] for x in sorted(h.hyperedges[e])])
        x1, y1 = pts[v]
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(target[0])}" y2="{_fmt(target[1])}" '
            f'stroke="{spec.dash_stroke}" stroke-width="{spec.stroke_width}" '
            f'stroke-dasharray="{spec.dash_pattern}"/>'
        )
    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
