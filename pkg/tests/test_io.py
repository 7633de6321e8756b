"""Parsers, serializers, and the canonical artifact JSON writer."""

from __future__ import annotations

import json

import pytest

from linecover.errors import GraphValidationError, ParseError
from linecover.io import (
    canonical_json,
    graph_to_edge_list,
    graph_to_json,
    graph_to_text,
    load_graph,
)
from linecover.synth import generate_synthetic_network

EDGE_LIST = """\
# demo network
v 0 0.0 0.0
v 1 3.0 4.0
v 2 3.0 0.0
0 1          # no explicit length -> euclidean
1 2 4.5
0 2 3.0
"""


class TestEdgeListFormat:
    def test_euclidean_fill(self):
        g = load_graph(EDGE_LIST, "edge-list")
        assert g.edge_length(0) == pytest.approx(5.0)  # 3-4-5 triangle
        assert g.edge_length(1) == pytest.approx(4.5)

    def test_accepts_bytes(self):
        g = load_graph(EDGE_LIST.encode(), "edge-list")
        assert g.n_vertices == 3

    def test_dangling_endpoint_reports_line(self):
        bad = "v 0 0 0\nv 1 1 0\n0 5\n"
        with pytest.raises(ParseError, match="unknown vertex id 5"):
            load_graph(bad, "edge-list")

    def test_bad_token_reports_line(self):
        bad = "v 0 0 0\nv 1 1 0\n0 one 2.0\n"
        with pytest.raises(ParseError, match="line 3"):
            load_graph(bad, "edge-list")

    def test_nonpositive_length_rejected(self):
        bad = "v 0 0 0\nv 1 1 0\n0 1 -3\n"
        with pytest.raises(GraphValidationError, match="non-positive"):
            load_graph(bad, "edge-list")

    def test_disconnected_rejected(self):
        bad = "v 0 0 0\nv 1 1 0\nv 2 9 9\nv 3 9 8\n0 1\n2 3\n"
        with pytest.raises(GraphValidationError, match="disconnected"):
            load_graph(bad, "edge-list")


class TestJsonFormat:
    def test_roundtrip_with_optional_length(self):
        doc = {
            "vertices": [{"id": 0, "x": 0.0, "y": 0.0}, {"id": 1, "x": 0.0, "y": 2.0}],
            "edges": [{"id": 0, "u": 0, "v": 1}],
        }
        g = load_graph(json.dumps(doc), "json")
        assert g.edge_length(0) == pytest.approx(2.0)

    def test_parse_failure(self):
        with pytest.raises(ParseError, match="invalid JSON"):
            load_graph("{not json", "json")

    def test_missing_sections(self):
        with pytest.raises(ParseError, match="vertices"):
            load_graph(json.dumps({"edges": []}), "json")

    def test_unknown_format(self):
        with pytest.raises(ParseError, match="unknown graph format"):
            load_graph(EDGE_LIST, "csv")


class TestRoundTrip:
    @pytest.mark.parametrize("fmt", ["edge-list", "json"])
    def test_load_serialize_load_identity(self, fmt):
        g = generate_synthetic_network(6, 5, 0.35, 0.2, seed=99)
        text = graph_to_text(g, fmt)
        g2 = load_graph(text, fmt)
        assert g.vertices() == g2.vertices()
        assert g.edges() == g2.edges()
        assert graph_to_text(g2, fmt) == text

    def test_edge_list_and_json_agree(self):
        g = generate_synthetic_network(4, 4, 0.1, 0.0, seed=5)
        via_text = load_graph(graph_to_edge_list(g), "edge-list")
        via_json = load_graph(json.dumps(graph_to_json(g)), "json")
        assert via_text.edges() == via_json.edges()


class TestCanonicalJson:
    def test_fixed_decimals(self):
        text = canonical_json({"value": 1.0 / 3.0, "count": 3})
        assert '"value": 0.333333' in text
        assert '"count": 3' in text
        assert text.endswith("\n")

    def test_negative_zero_normalized(self):
        assert "-0.000000" not in canonical_json({"x": -0.0})

    def test_scalar_lists_inline(self):
        text = canonical_json({"ids": [1, 2, 3]})
        assert "[1, 2, 3]" in text

    def test_valid_json(self):
        payload = {"a": [1.5, {"b": None, "c": True}], "d": "x,\"y\""}
        parsed = json.loads(canonical_json(payload))
        assert parsed["a"][1]["c"] is True
        assert parsed["d"] == 'x,"y"'

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="non-finite"):
            canonical_json({"x": float("inf")})
