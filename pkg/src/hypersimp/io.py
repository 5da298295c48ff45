"""Reading and writing hypergraphs.

Two formats are supported:

* ``json``: ``{"vertices": [...], "hyperedges": {id: [vertex ids]},
  "labels": {id: str}}`` with ``labels`` optional.  Serialization is
  deterministic (sorted ids, two-space indent), so a parse/serialize round
  trip is byte identical after one normalization pass.
* ``edgelist``: one hyperedge per line as ``edgeId: v1 v2 ...``, ``#``
  comments, UTF-8 with LF line endings.  The format cannot express isolated
  vertices or labels.
"""
from __future__ import annotations

import json
from typing import Union

from .model import Hypergraph, ValidationError

FORMATS = ("json", "edgelist")


class FormatError(ValueError):
    """Malformed input; carries a 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _text(data: Union[bytes, str]) -> str:
    return data.decode("utf-8") if isinstance(data, bytes) else data


def parse_hypergraph(data: Union[bytes, str], format: str = "json") -> Hypergraph:
    """Parse ``data`` in the given format into a validated hypergraph."""
    if format == "json":
        return _parse_json(_text(data))
    if format == "edgelist":
        return _parse_edgelist(_text(data))
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def serialize_hypergraph(h: Hypergraph, format: str = "json") -> bytes:
    """Serialize ``h`` deterministically; see module docstring for schemas."""
    if format == "json":
        doc = {
            "vertices": sorted(h.vertices),
            "hyperedges": {e: sorted(m) for e, m in sorted(h.hyperedges.items())},
        }
        if h.labels:
            doc["labels"] = dict(sorted(h.labels.items()))
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")
    if format == "edgelist":
        used = set().union(*h.hyperedges.values()) if h.hyperedges else set()
        isolated = h.vertices - used
        if isolated:
            raise ValidationError(
                f"edgelist format cannot express isolated vertex {min(isolated)!r}"
            )
        lines = [f"{e}: {' '.join(sorted(m))}" for e, m in sorted(h.hyperedges.items())]
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")


def _parse_json(text: str) -> Hypergraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise FormatError("top-level JSON value must be an object")
    if "hyperedges" in doc and isinstance(doc["hyperedges"], dict):
        hyperedges = doc["hyperedges"]
    else:
        raise FormatError("missing or malformed 'hyperedges' object")
    vertices = doc.get("vertices")
    if vertices is None:
        vertices = sorted({v for m in hyperedges.values() for v in m})
    if not isinstance(vertices, list):
        raise FormatError("'vertices' must be a list")
    labels = doc.get("labels", {})
    if not isinstance(labels, dict):
        raise FormatError("'labels' must be an object")
    for e, members in hyperedges.items():
        if not isinstance(members, list):
            raise FormatError(f"hyperedge {e!r} must map to a list of vertex ids")
    try:
        return Hypergraph(
            vertices=frozenset(vertices),
            hyperedges={e: frozenset(m) for e, m in hyperedges.items()},
            labels=labels,
        )
    except ValidationError as exc:
        raise FormatError(str(exc)) from None


def _parse_edgelist(text: str) -> Hypergraph:
    hyperedges: dict[str, frozenset[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise FormatError("expected 'edgeId: v1 v2 ...' (missing colon)", line=lineno)
        eid, _, rest = line.partition(":")
        eid = eid.strip()
        if not eid:
            raise FormatError("empty hyperedge id", line=lineno)
        members = rest.split()
        if not members:
            raise FormatError(f"hyperedge {eid!r} has no vertices", line=lineno)
        if eid in hyperedges:
            raise FormatError(f"duplicate hyperedge id {eid!r}", line=lineno)
        hyperedges[eid] = frozenset(members)
    vertices = frozenset(v for m in hyperedges.values() for v in m)
    try:
        return Hypergraph(vertices=vertices, hyperedges=hyperedges)
    except ValidationError as exc:
        raise FormatError(str(exc)) from None
