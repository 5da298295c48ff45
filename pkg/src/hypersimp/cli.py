"""Command-line interface.

Subcommands: decompose, forbidden, planarity, simplify, render, ingest and
stats.  All reports are versioned JSON written deterministically; set the
HYPERSIMP_LOG environment variable (DEBUG/INFO/WARNING/ERROR) for logging.
"""
from __future__ import annotations

import json
import logging
import os
from pathlib import Path

import click

from .decompose import decomposition_report, topological_decomposition
from .forbidden import forbidden_report
from .ingest import (
    DEFAULT_MIN_CONTACT_SECONDS,
    IngestError,
    ingest_contacts,
    ingest_friendship,
    parse_contacts,
    parse_friendship,
)
from .io import FormatError, parse_hypergraph, serialize_hypergraph
from .layout import Layout, RenderSpec, force_layout, render_svg
from .model import Hypergraph, ValidationError, build_bipartite
from .planarity import planarity_report
from .simplify import OpLog, PriorityParams, simplify

log = logging.getLogger("hypersimp")

HYPERGRAPH_FORMATS = ("json", "edgelist")
INGEST_FORMATS = ("contacts-csv", "friendship-csv")


def _setup_logging() -> None:
    level = os.environ.get("HYPERSIMP_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(name)s %(levelname)s %(message)s")


def _load(path: str, format: str | None) -> Hypergraph:
    data = Path(path).read_bytes()
    fmt = format
    if fmt is None:
        fmt = "edgelist" if path.endswith((".txt", ".edgelist")) else "json"
    if fmt == "json":
        doc = json.loads(data)
        if isinstance(doc, dict) and "hypergraph" in doc:
            data = json.dumps(doc["hypergraph"]).encode()  # simplify-report file
    try:
        return parse_hypergraph(data, format=fmt)
    except (FormatError, ValidationError) as exc:
        raise click.ClickException(f"{path}: {exc}") from None


def _dump(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
        click.echo(f"wrote {out}")
    else:
        click.echo(text, nl=False)


def _priority_options(f):
    f = click.option("--alpha", type=float, default=0.0, show_default=True,
                     help="weight of the degree-rarity term")(f)
    f = click.option("--beta", type=float, default=0.9, show_default=True,
                     help="weight of the shared-adjacency term")(f)
    f = click.option("--gamma", type=float, default=0.4, show_default=True,
                     help="weight of the betweenness term")(f)
    f = click.option("--delta", type=float, default=1.0, show_default=True,
                     help="weight of the topology term")(f)
    f = click.option("--eta-threshold", type=float, default=None,
                     help="stop a block once cycles-per-node drops this low")(f)
    f = click.option("--prune-threshold", type=float, default=None,
                     help="prune tree leaves while the next priority stays above this")(f)
    f = click.option("--target", default="planar", show_default=True,
                     help="stopping rule: planar, eta, or ops:N")(f)
    f = click.option("--seed", type=int, default=42, show_default=True)(f)
    return f


def _make_params(alpha, beta, gamma, delta, eta_threshold, prune_threshold, target, seed) -> PriorityParams:
    op_budget = None
    if target.startswith("ops:"):
        op_budget = int(target.split(":", 1)[1])
        target = "ops"
    try:
        return PriorityParams(
            alpha=alpha, beta=beta, gamma=gamma, delta=delta,
            eta_threshold=eta_threshold, prune_threshold=prune_threshold,
            op_budget=op_budget, target=target, seed=seed,
        )
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None


@click.group()
def main() -> None:
    """Decompose, analyze, simplify and render hypergraphs."""
    _setup_logging()


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--format", "format_", type=click.Choice(HYPERGRAPH_FORMATS), default=None)
@click.option("--out", default=None, help="report path (stdout when omitted)")
def decompose(input_, format_, out) -> None:
    """Write the block/bridge/branch decomposition report."""
    h = _load(input_, format_)
    d = topological_decomposition(build_bipartite(h))
    _dump(decomposition_report(d), out)


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--format", "format_", type=click.Choice(HYPERGRAPH_FORMATS), default=None)
@click.option("--out", default=None)
def forbidden(input_, format_, out) -> None:
    """Report forbidden clusters and classified forbidden sub-hypergraphs."""
    h = _load(input_, format_)
    _dump(forbidden_report(h), out)


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--format", "format_", type=click.Choice(HYPERGRAPH_FORMATS), default=None)
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--out", default=None)
def planarity(input_, format_, seed, out) -> None:
    """Report Zykov / convex-polygon planarity and residual crossings."""
    h = _load(input_, format_)
    _dump(planarity_report(h, seed=seed), out)


@main.command(name="simplify")
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--format", "format_", type=click.Choice(HYPERGRAPH_FORMATS), default=None)
@_priority_options
@click.option("--out", default=None, help="combined report (hypergraph + op log)")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="worker threads for the per-structure analysis passes")
def simplify_cmd(input_, format_, alpha, beta, gamma, delta, eta_threshold,
                 prune_threshold, target, seed, out, jobs) -> None:
    """Simplify a hypergraph and emit the result with its operation log."""
    h = _load(input_, format_)
    params = _make_params(alpha, beta, gamma, delta, eta_threshold,
                          prune_threshold, target, seed)
    simplified, oplog = simplify(h, params, jobs=jobs)
    doc = {
        "schema_version": 1,
        "hypergraph": json.loads(serialize_hypergraph(simplified, "json")),
        "op_log": oplog.to_dict(),
    }
    _dump(doc, out)


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--format", "format_", type=click.Choice(HYPERGRAPH_FORMATS), default=None)
@click.option("--svg", "svg_out", required=True, type=click.Path())
@click.option("--positions", default=None, type=click.Path(exists=True),
              help="layout JSON {id: [x, y]}; computed when omitted")
@click.option("--positions-out", default=None, type=click.Path(),
              help="write the layout used for rendering as JSON")
@click.option("--annotations", "annotations_from", default=None, type=click.Path(exists=True),
              help="simplify report whose cut annotations are drawn as dashed lines")
@click.option("--seed", type=int, default=42, show_default=True)
def render(input_, format_, svg_out, positions, positions_out, annotations_from, seed) -> None:
    """Render the polygon visualization as SVG."""
    h = _load(input_, format_)
    if positions:
        doc = json.loads(Path(positions).read_text())
        layout = Layout.from_dict(doc, seed=seed)
    else:
        layout = force_layout(build_bipartite(h), seed=seed)
    if positions_out:
        Path(positions_out).write_text(
            json.dumps(layout.to_dict(), indent=2, sort_keys=True) + "\n"
        )
    annotations = []
    if annotations_from:
        doc = json.loads(Path(annotations_from).read_text())
        oplog = OpLog.from_dict(doc.get("op_log", doc))
        current = _current_ids(oplog)
        for v, e in oplog.annotations:
            v2, e2 = current.get(v, v), current.get(e, e)
            if v2 in h.vertices and e2 in h.hyperedges:
                annotations.append((v2, e2))
    try:
        svg = render_svg(h, layout, RenderSpec(), annotations=annotations)
    except ValueError as exc:
        raise click.ClickException(str(exc)) from None
    Path(svg_out).write_bytes(svg)
    click.echo(f"wrote {svg_out}")


def _current_ids(oplog: OpLog) -> dict[str, str]:
    """Map original element ids to their current merged names."""
    out: dict[str, str] = {}
    for merged, members in oplog.genealogy.items():
        for m in members:
            out[m] = merged
    return out


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--format", "format_", type=click.Choice(INGEST_FORMATS), required=True)
@click.option("--min-contact-seconds", type=float, default=DEFAULT_MIN_CONTACT_SECONDS,
              show_default=True, help="strict threshold on accumulated contact time")
@click.option("--out", default=None)
def ingest(input_, format_, min_contact_seconds, out) -> None:
    """Build a hypergraph from contact or friendship data.

    contacts-csv rows: `timestamp, a, b[, duration]` (whitespace or commas);
    friendship-csv rows: `reporter, friend` directed nominations.
    """
    text = Path(input_).read_text(encoding="utf-8")
    try:
        if format_ == "contacts-csv":
            h = ingest_contacts(parse_contacts(text), min_total_seconds=min_contact_seconds)
        else:
            h = ingest_friendship(parse_friendship(text))
    except IngestError as exc:
        raise click.ClickException(f"{input_}: {exc}") from None
    doc = json.loads(serialize_hypergraph(h, "json"))
    _dump(doc, out)


@main.command()
@click.option("--input", "input_", required=True, type=click.Path(exists=True))
@click.option("--format", "format_", type=click.Choice(HYPERGRAPH_FORMATS), default=None)
def stats(input_, format_) -> None:
    """Print size, topology and per-structure figures."""
    h = _load(input_, format_)
    g = build_bipartite(h)
    d = topological_decomposition(g)
    b0, b1 = d.betti()
    eta = b1 / g.n_nodes if g.n_nodes else 0.0
    click.echo(f"|V| = {h.n_vertices}")
    click.echo(f"|E| = {h.n_hyperedges}")
    click.echo(f"incidences = {g.n_edges}")
    click.echo(f"B0 = {b0}")
    click.echo(f"B1 = {b1}")
    click.echo(f"eta = {eta:.4f}")
    click.echo("")
    click.echo(f"{'structure':<10} {'kind':<8} {'nodes':>6} {'edges':>6} {'B1':>4} {'eta':>8} roots")
    for block in d.blocks:
        click.echo(
            f"{block.id:<10} {'block':<8} {len(block.nodes):>6} {len(block.edges):>6} "
            f"{block.betti1:>4} {float(block.entanglement):>8.4f}"
        )
    for tree in d.trees:
        roots = ",".join(n for n, _ in tree.roots) or "-"
        click.echo(
            f"{tree.id:<10} {tree.kind:<8} {len(tree.nodes):>6} {len(tree.edges):>6} "
            f"{0:>4} {0.0:>8.4f} {roots}"
        )


if __name__ == "__main__":
    main()
