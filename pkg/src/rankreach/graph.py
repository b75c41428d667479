"""Directed-graph ingestion: edge-list and JSON parsing, adjacency, dangling nodes.

Two input formats are supported.  The edge-list form is one ``src dst`` pair
per line ('#' starts a comment, blank lines are skipped); the node set is
everything mentioned on some line.  The JSON form declares nodes explicitly,
``{"nodes": [...], "edges": [[s, t], ...]}`` with index pairs, which is the
only way to state an isolated node (no in- or out-links).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError


def _canonical_order(labels) -> list[str]:
    """Numeric ascending when every label is a base-10 integer, else lexicographic."""
    try:
        return sorted(labels, key=lambda t: (int(t), t))
    except ValueError:
        return sorted(labels)


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable directed graph over labelled nodes.

    ``edges`` holds (source, target) index pairs into ``labels``.  Set
    semantics make duplicate edges impossible; self-loops are allowed and
    count toward the out-degree.
    """

    labels: tuple[str, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise ParseError("no nodes")
        if len(set(self.labels)) != n:
            raise ParseError("node labels must be distinct")
        for s, t in self.edges:
            if not (0 <= s < n and 0 <= t < n):
                raise ParseError(f"edge ({s}, {t}) out of range for {n} nodes")

    @property
    def n(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown node label {label!r}") from None

    def to_edge_list(self) -> str:
        """Serialize as edge-list text; refuses graphs with isolated nodes.

        An isolated node appears on no line, so re-parsing would drop it;
        such graphs round-trip through :meth:`to_json` instead.
        """
        mentioned = {i for e in self.edges for i in e}
        if len(mentioned) < self.n:
            missing = next(i for i in range(self.n) if i not in mentioned)
            raise DomainError(
                f"node {self.labels[missing]!r} has no edges; use the JSON form"
            )
        lines = [
            f"{self.labels[s]} {self.labels[t]}" for s, t in sorted(self.edges)
        ]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {"nodes": list(self.labels), "edges": sorted(map(list, self.edges))}
        return json.dumps(doc, sort_keys=True)


@dataclass(frozen=True)
class AdjacencyView:
    """Binary adjacency matrix ``a`` with per-node out-degrees ``kout``."""

    a: np.ndarray
    kout: np.ndarray


@dataclass(frozen=True)
class DanglingIndicator:
    """Indicator vector: ``d[i] = 1`` exactly when node i has no outlinks."""

    d: np.ndarray


def parse_edge_list(text: str) -> DirectedGraph:
    """Parse edge-list text into a graph with canonically ordered labels."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(
                f"line {lineno}: expected 2 tokens 'src dst', got {len(tokens)}"
            )
        pairs.append((tokens[0], tokens[1]))
    labels = _canonical_order({tok for pair in pairs for tok in pair})
    if not labels:
        raise ParseError("no nodes")
    index = {label: i for i, label in enumerate(labels)}
    edges = frozenset((index[s], index[t]) for s, t in pairs)
    return DirectedGraph(labels=tuple(labels), edges=edges)


def parse_graph_json(text: str) -> DirectedGraph:
    """Parse the JSON graph form; node order is the declared order."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "nodes" not in doc or "edges" not in doc:
        raise ParseError('expected an object with "nodes" and "edges"')
    raw_nodes = doc["nodes"]
    if not isinstance(raw_nodes, list):
        raise ParseError('"nodes" must be a list of labels')
    labels = tuple(str(x) for x in raw_nodes)
    edges = set()
    for k, pair in enumerate(doc["edges"]):
        ok = (
            isinstance(pair, list)
            and len(pair) == 2
            and all(isinstance(x, int) and not isinstance(x, bool) for x in pair)
        )
        if not ok:
            raise ParseError(f"edge {k}: expected [source_index, target_index]")
        edges.add((pair[0], pair[1]))
    return DirectedGraph(labels=labels, edges=frozenset(edges))


def adjacency(g: DirectedGraph) -> AdjacencyView:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for s, t in g.edges:
        a[s, t] = 1
    kout = a.sum(axis=1)
    a.flags.writeable = False
    kout.flags.writeable = False
    return AdjacencyView(a=a, kout=kout)


def dangling_indicator(g: DirectedGraph) -> DanglingIndicator:
    d = (adjacency(g).kout == 0).astype(np.int64)
    d.flags.writeable = False
    return DanglingIndicator(d=d)
