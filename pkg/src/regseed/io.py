"""Canonical JSON graph files.

A document looks like::

    {"r": 2, "parts": [2, 2], "b": [1, 2],
     "vertex_colors": [[0, 0], [0, 0]],
     "pairs": [{"i": 0, "j": 1, "palette": 2, "matrix": [[0, 0], [0, 1]]}]}

``matrix`` is row-major with rows indexed by part ``i``. The optional
``vertex_palettes`` list is written only when a palette is larger than the
colors actually used (max id + 1), which is the default on reading.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import ColoredGraph, GraphError, validate_graph

_TOP_FIELDS = {"r", "parts", "b", "vertex_colors", "pairs", "vertex_palettes"}
_PAIR_FIELDS = {"i", "j", "palette", "matrix"}


def graph_to_document(g: ColoredGraph) -> dict:
    doc = {
        "r": g.r,
        "parts": list(g.part_sizes),
        "b": list(g.b),
        "vertex_colors": [v.tolist() for v in g.vertex_colors],
        "pairs": [{"i": i, "j": j, "palette": g.edge_palettes[(i, j)],
                   "matrix": g.edge_colors[(i, j)].tolist()} for i, j in g.pairs],
    }
    if list(g.vertex_palettes) != _inferred_palettes(doc["vertex_colors"]):
        doc["vertex_palettes"] = list(g.vertex_palettes)
    return doc


def _inferred_palettes(vertex_colors) -> list[int]:
    return [max(row) + 1 if len(row) else 1 for row in vertex_colors]


def graph_from_document(doc: dict) -> ColoredGraph:
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    unknown = set(doc) - _TOP_FIELDS
    if unknown:
        raise GraphError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = _TOP_FIELDS - {"vertex_palettes"} - set(doc)
    if missing:
        raise GraphError(f"missing field(s): {', '.join(sorted(missing))}")
    if len(doc["parts"]) != doc["r"]:
        raise GraphError(f"r={doc['r']} but {len(doc['parts'])} part sizes given")
    edges, palettes = {}, {}
    previous = None
    for k, pair in enumerate(doc["pairs"]):
        unknown = set(pair) - _PAIR_FIELDS
        if unknown:
            raise GraphError(f"pairs[{k}]: unknown field(s): {', '.join(sorted(unknown))}")
        if set(pair) != _PAIR_FIELDS:
            raise GraphError(f"pairs[{k}]: missing field(s): {', '.join(sorted(_PAIR_FIELDS - set(pair)))}")
        i, j = pair["i"], pair["j"]
        if not i < j:
            raise GraphError(f"pairs[{k}]: pair ({i}, {j}) must have i < j")
        if previous is not None and (i, j) <= previous:
            raise GraphError(f"pairs[{k}]: pair ({i}, {j}) out of canonical (i, j) order")
        previous = (i, j)
        edges[(i, j)] = pair["matrix"]
        palettes[(i, j)] = pair["palette"]
    vertex_palettes = doc.get("vertex_palettes") or _inferred_palettes(doc["vertex_colors"])
    try:
        g = ColoredGraph(doc["parts"], doc["vertex_colors"], edges, vertex_palettes, palettes, doc["b"])
    except (ValueError, TypeError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from exc
    validate_graph(g)
    return g


def dumps(g: ColoredGraph) -> str:
    return json.dumps(graph_to_document(g), separators=(",", ":")) + "\n"


def loads(text: str) -> ColoredGraph:
    return graph_from_document(json.loads(text))


def write_graph(g: ColoredGraph, path) -> None:
    Path(path).write_text(dumps(g))


def read_graph(path) -> ColoredGraph:
    return loads(Path(path).read_text())
