"""Dataset ingestion: contact streams and friendship surveys to hypergraphs.

Contact rows accumulate pairwise face-to-face time; pairs above a threshold
form a simple graph whose maximal cliques (of two or more participants)
become hyperedges.  Friendship rows are directed nominations; only mutual
pairs count, then the same clique construction applies.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .model import Hypergraph

# one row of a typical proximity stream covers a 20 second window
DEFAULT_ROW_SECONDS = 20.0
DEFAULT_MIN_CONTACT_SECONDS = 40.0


class IngestError(ValueError):
    """Malformed dataset row; carries the 1-based row number."""

    def __init__(self, message: str, row: int | None = None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


@dataclass(frozen=True)
class ContactRecord:
    """One observed contact between two participants."""

    timestamp: int
    a: str
    b: str
    duration: float = DEFAULT_ROW_SECONDS

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise IngestError(f"self-contact for participant {self.a!r}")
        if self.timestamp < 0:
            raise IngestError("negative timestamp")


def _split_row(line: str) -> list[str]:
    line = line.strip()
    if "," in line:
        return [f.strip() for f in line.split(",")]
    return line.split()


def parse_contacts(text: str) -> list[ContactRecord]:
    """Parse `timestamp, a, b[, duration]` rows (comma or whitespace
    separated, optional header, '#' comments)."""
    records = []
    for rowno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = _split_row(line)
        if rowno == 1 and fields and not _is_number(fields[0]):
            continue  # header
        if len(fields) not in (3, 4):
            raise IngestError(f"expected 3 or 4 fields, got {len(fields)}", row=rowno)
        if not _is_number(fields[0]):
            raise IngestError(f"timestamp {fields[0]!r} is not a number", row=rowno)
        duration = DEFAULT_ROW_SECONDS
        if len(fields) == 4:
            if not _is_number(fields[3]):
                raise IngestError(f"duration {fields[3]!r} is not a number", row=rowno)
            duration = float(fields[3])
        try:
            records.append(
                ContactRecord(
                    timestamp=int(float(fields[0])), a=fields[1], b=fields[2],
                    duration=duration,
                )
            )
        except IngestError as exc:
            raise IngestError(str(exc), row=rowno) from None
    return records


def parse_friendship(text: str) -> list[tuple[str, str]]:
    """Parse directed `reporter, friend` rows (no header; '#' comments)."""
    pairs = []
    for rowno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = _split_row(line)
        if len(fields) != 2:
            raise IngestError(f"expected 2 fields, got {len(fields)}", row=rowno)
        if fields[0] == fields[1]:
            raise IngestError(f"self-nomination for {fields[0]!r}", row=rowno)
        pairs.append((fields[0], fields[1]))
    return pairs


def _is_number(s: str) -> bool:
    try:
        float(s)
        return True
    except ValueError:
        return False


def ingest_contacts(
    records: Iterable[ContactRecord],
    min_total_seconds: float = DEFAULT_MIN_CONTACT_SECONDS,
) -> Hypergraph:
    """Hypergraph of maximal contact cliques.

    A pair counts when its accumulated contact time strictly exceeds
    ``min_total_seconds``; each maximal clique of two or more participants
    becomes one hyperedge.
    """
    totals: dict[frozenset[str], float] = {}
    for rec in records:
        key = frozenset((rec.a, rec.b))
        totals[key] = totals.get(key, 0.0) + rec.duration
    adj: dict[str, set[str]] = {}
    for pair, total in totals.items():
        if total > min_total_seconds:
            a, b = sorted(pair)
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    return _clique_hypergraph(adj)


def ingest_friendship(pairs: Iterable[tuple[str, str]]) -> Hypergraph:
    """Hypergraph of maximal mutual-friendship cliques."""
    directed = set(pairs)
    adj: dict[str, set[str]] = {}
    for a, b in directed:
        if (b, a) in directed:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    return _clique_hypergraph(adj)


def _clique_hypergraph(adj: dict[str, set[str]]) -> Hypergraph:
    cliques = sorted(sorted(c) for c in maximal_cliques(adj) if len(c) >= 2)
    vertices = {v for c in cliques for v in c}
    hyperedges: dict[str, frozenset[str]] = {}
    for i, members in enumerate(cliques):
        eid = f"c{i}"
        while eid in vertices:
            eid += "_"
        hyperedges[eid] = frozenset(members)
    return Hypergraph(vertices=frozenset(vertices), hyperedges=hyperedges)


def maximal_cliques(adj: dict[str, set[str]]) -> list[frozenset[str]]:
    """All maximal cliques, found by pivoted recursive expansion."""
    out: list[frozenset[str]] = []

    def expand(r: set[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            out.append(frozenset(r))
            return
        pivot = max(sorted(p | x), key=lambda u: len(p & adj[u]))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], x & adj[v])
            p.remove(v)
            x.add(v)

    expand(set(), set(adj), set())
    return out
