"""Graph ingestion, serialization, and canonical JSON output.

Two interchange formats are supported:

* ``edge-list`` -- plain text, ``#`` comments, vertex header lines
  ``v <id> <x> <y>`` followed by edge lines ``<u> <v> [length]``.
* ``json`` -- an object ``{"vertices": [{id,x,y}], "edges": [{id,u,v,length?}]}``.

Edges without an explicit length get the Euclidean distance between their
endpoint coordinates.  Graph serialization uses ``repr`` floats so that a
load / serialize / load round trip reproduces the data model exactly.
Planner artifacts (partitions, plans, reports) instead go through
:func:`canonical_json`, which pins every float to six decimals for
byte-stable output across platforms.
"""

from __future__ import annotations

import io as _stdio
import json
import math
from pathlib import Path

from .errors import ParseError
from .graph import RoadGraph

GRAPH_FORMATS = ("edge-list", "json", "geo-json-like")


def load_graph(source, format: str = "edge-list") -> RoadGraph:
    """Parse and validate a road-network graph from a stream, path, or text."""
    text = _read_text(source)
    if format == "edge-list":
        vertices, edges = _parse_edge_list(text)
    elif format in ("json", "geo-json-like"):
        vertices, edges = _parse_graph_json(text)
    else:
        raise ParseError(f"unknown graph format {format!r}; expected one of {GRAPH_FORMATS}")
    return RoadGraph(vertices, edges)


def save_graph(graph: RoadGraph, path, format: str = "edge-list") -> None:
    text = graph_to_text(graph, format)
    Path(path).write_text(text, encoding="utf-8")


def graph_to_text(graph: RoadGraph, format: str = "edge-list") -> str:
    if format == "edge-list":
        return graph_to_edge_list(graph)
    if format in ("json", "geo-json-like"):
        return json.dumps(graph_to_json(graph), indent=2) + "\n"
    raise ParseError(f"unknown graph format {format!r}; expected one of {GRAPH_FORMATS}")


def graph_to_edge_list(graph: RoadGraph) -> str:
    lines = []
    for vid, x, y in graph.vertices():
        lines.append(f"v {vid} {x!r} {y!r}")
    for eid, u, v, length in graph.edges():
        lines.append(f"{u} {v} {length!r}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: RoadGraph) -> dict:
    return {
        "vertices": [{"id": i, "x": x, "y": y} for i, x, y in graph.vertices()],
        "edges": [
            {"id": e, "u": u, "v": v, "length": length}
            for e, u, v, length in graph.edges()
        ],
    }


def _read_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    if isinstance(source, (_stdio.RawIOBase, _stdio.BufferedIOBase)):
        return source.read().decode("utf-8")
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    raise ParseError(f"cannot read graph from {type(source).__name__}")


def _parse_edge_list(text: str):
    vertices = []
    edge_records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "v":
            if len(tokens) != 4:
                raise ParseError(
                    f"line {lineno}: vertex line needs 'v <id> <x> <y>', got {raw!r}"
                )
            vertices.append(
                (
                    _parse_int(tokens[1], lineno, "vertex id"),
                    _parse_float(tokens[2], lineno, "x coordinate"),
                    _parse_float(tokens[3], lineno, "y coordinate"),
                )
            )
        else:
            if len(tokens) not in (2, 3):
                raise ParseError(
                    f"line {lineno}: edge line needs '<u> <v> [length]', got {raw!r}"
                )
            u = _parse_int(tokens[0], lineno, "edge endpoint")
            v = _parse_int(tokens[1], lineno, "edge endpoint")
            length = (
                _parse_float(tokens[2], lineno, "edge length")
                if len(tokens) == 3
                else None
            )
            edge_records.append((lineno, u, v, length))
    coords = {i: (x, y) for i, x, y in vertices}
    edges = []
    for eid, (lineno, u, v, length) in enumerate(edge_records):
        if length is None:
            length = _euclidean(coords, u, v, f"line {lineno}")
        edges.append((eid, u, v, length))
    return vertices, edges


def _parse_graph_json(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise ParseError("graph JSON must be an object with 'vertices' and 'edges'")
    vertices = []
    for i, rec in enumerate(doc["vertices"]):
        try:
            vertices.append((int(rec["id"]), float(rec["x"]), float(rec["y"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"vertex record {i}: {exc} in {rec!r}") from None
    coords = {i: (x, y) for i, x, y in vertices}
    edges = []
    for i, rec in enumerate(doc["edges"]):
        try:
            eid = int(rec["id"]) if "id" in rec else i
            u = int(rec["u"])
            v = int(rec["v"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"edge record {i}: {exc} in {rec!r}") from None
        if rec.get("length") is not None:
            length = float(rec["length"])
        else:
            length = _euclidean(coords, u, v, f"edge record {i}")
        edges.append((eid, u, v, length))
    return vertices, edges


def _euclidean(coords, u, v, where: str) -> float:
    if u not in coords or v not in coords:
        missing = u if u not in coords else v
        raise ParseError(
            f"{where}: edge references unknown vertex id {missing}"
        )
    (ux, uy), (vx, vy) = coords[u], coords[v]
    return math.hypot(vx - ux, vy - uy)


def _parse_int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"line {lineno}: bad {what} {token!r}") from None


def _parse_float(token: str, lineno: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: bad {what} {token!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"line {lineno}: bad {what} {token!r}")
    return value


# -- canonical artifact JSON ------------------------------------------------


def canonical_json(obj) -> str:
    """Serialize planner artifacts with fixed 6-decimal float formatting.

    Dict insertion order is preserved; output always ends with a newline.
    """
    out: list[str] = []
    _write_canonical(obj, out, 0)
    out.append("\n")
    return "".join(out)


def write_canonical_json(obj, path) -> None:
    Path(path).write_text(canonical_json(obj), encoding="utf-8")


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"non-finite float {value!r} in artifact output")
    text = f"{value:.6f}"
    if text == "-0.000000":
        text = "0.000000"
    return text


def _write_canonical(obj, out: list[str], depth: int) -> None:
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{inner}{json.dumps(str(key))}: ")
            _write_canonical(value, out, depth + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        simple = all(isinstance(x, (bool, int, float, str)) or x is None for x in obj)
        if simple:
            out.append("[")
            out.append(", ".join(_scalar(x) for x in obj))
            out.append("]")
        else:
            out.append("[\n")
            for i, value in enumerate(obj):
                out.append(inner)
                _write_canonical(value, out, depth + 1)
                out.append(",\n" if i < len(obj) - 1 else "\n")
            out.append(pad + "]")
    else:
        out.append(_scalar(obj))


def _scalar(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__} canonically")
