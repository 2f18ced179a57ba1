"""Flat-file graph formats: edge list, DOT, and the self-describing
"graphdoc" JSON document (bit-exact round-trip)."""

from __future__ import annotations

import json

from .errors import ValidationError
from .graphs import Graph

FORMAT_EDGELIST = "edgelist"
FORMAT_DOT = "dot"
FORMAT_GRAPHDOC = "graphdoc"

FORMATS = (FORMAT_EDGELIST, FORMAT_DOT, FORMAT_GRAPHDOC)

_GRAPHDOC_MAGIC = "arrgraph-graphdoc"


def _label_str(label: tuple[int, ...]) -> str:
    return "[" + ",".join(str(x + 1) for x in label) + "]"


def to_edgelist(graph: Graph) -> str:
    """One `u v` pair per line, 0-based vertex indexes."""
    lines = [f"{u} {v}" for u, v in graph.edges()]
    header = f"# vertices {graph.vertex_count}"
    return "\n".join([header] + lines) + "\n"


def from_edgelist(text: str) -> Graph:
    vertex_count = None
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["vertices"]:
                vertex_count = int(parts[1])
            continue
        try:
            u, v = map(int, line.split())
        except ValueError:
            raise ValidationError(f"bad edge list line: {line!r}")
        edges.append((u, v))
    if vertex_count is None:
        vertex_count = max((max(u, v) for u, v in edges), default=-1) + 1
    labels = [(i,) for i in range(vertex_count)]
    return Graph(labels, edges, {"family": "plain"})


def to_dot(graph: Graph) -> str:
    lines = ["graph G {"]
    for v in range(graph.vertex_count):
        lines.append(f'  {v} [label="{_label_str(graph.labels[v])}"];')
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_graphdoc(graph: Graph) -> str:
    """Self-describing JSON: metadata, 1-based tuple labels, sorted edges.
    Canonical serialization (sorted keys, fixed separators) so re-export of
    an imported document is byte-identical."""
    doc = {
        "format": _GRAPHDOC_MAGIC,
        "version": 1,
        "metadata": graph.metadata,
        "vertex_count": graph.vertex_count,
        "labels": [[x + 1 for x in lab] for lab in graph.labels],
        "edges": sorted(graph.edges()),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def from_graphdoc(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"not a graph document: {e}")
    if not isinstance(doc, dict) or doc.get("format") != _GRAPHDOC_MAGIC:
        raise ValidationError("not a graph document (missing format marker)")
    labels = [tuple(x - 1 for x in lab) for lab in doc["labels"]]
    if len(labels) != doc.get("vertex_count"):
        raise ValidationError("label count does not match vertex_count")
    edges = [tuple(e) for e in doc["edges"]]
    return Graph(labels, edges, doc.get("metadata", {}))


def dump(graph: Graph, fmt: str) -> str:
    if fmt == FORMAT_EDGELIST:
        return to_edgelist(graph)
    if fmt == FORMAT_DOT:
        return to_dot(graph)
    if fmt == FORMAT_GRAPHDOC:
        return to_graphdoc(graph)
    raise ValidationError(f"unknown format {fmt!r}; choose from {FORMATS}")


def load(text: str) -> Graph:
    """Read a graphdoc or, as a fallback, an edge list."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return from_graphdoc(text)
    return from_edgelist(text)


def load_file(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return load(fh.read())
