"""Static SVG rendering of partitions and tour plans.

Edges are drawn as line segments in graph coordinates (y flipped so north
is up).  Partition drawings color edges by cluster and mark centroids;
plan drawings color each sub-graph's legs by robot, with deadhead legs
dashed.  Coordinates are formatted with three decimals so repeated runs
emit identical bytes.
"""

from __future__ import annotations

from .graph import RoadGraph

PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)
_MARGIN_FRACTION = 0.04


def render_partition_svg(graph: RoadGraph, partition) -> str:
    """Edges colored by cluster with centroid markers."""
    doc = partition.to_json_dict() if hasattr(partition, "to_json_dict") else partition
    frame = _Frame(graph)
    body = []
    for i, cluster in enumerate(doc["clusters"]):
        color = PALETTE[i % len(PALETTE)]
        body.append(f'<g stroke="{color}" stroke-width="{frame.stroke}" fill="none">')
        for edge in cluster["edges"]:
            body.append(frame.edge_line(edge))
        body.append("</g>")
    for i, cluster in enumerate(doc["clusters"]):
        color = PALETTE[i % len(PALETTE)]
        body.append(frame.vertex_marker(cluster["centroid"], color))
    return frame.document(body)


def render_plan_svg(graph: RoadGraph, plan) -> str:
    """Per-robot tour legs per sub-graph; deadheads dashed, depots marked."""
    doc = plan.to_json_dict() if hasattr(plan, "to_json_dict") else plan
    frame = _Frame(graph)
    body = [
        f'<g stroke="#dddddd" stroke-width="{frame.stroke}" fill="none">'
    ]
    for edge_id in graph.edge_ids():
        body.append(frame.edge_line(edge_id))
    body.append("</g>")
    for sub in doc["subgraphs"]:
        body.append(f'<g data-cluster="{sub["cluster"]}" fill="none">')
        for tour in sub["tours"]:
            color = PALETTE[tour["robot"] % len(PALETTE)]
            for leg in tour["legs"]:
                dash = ' stroke-dasharray="4 3"' if leg["kind"] == "deadhead" else ""
                body.append(
                    frame.edge_line(
                        leg["edge"],
                        f' stroke="{color}" stroke-width="{frame.stroke * 1.5}"{dash}',
                    )
                )
        body.append("</g>")
        body.append(frame.vertex_marker(sub["depot"], "#000000"))
    return frame.document(body)


class _Frame:
    def __init__(self, graph: RoadGraph):
        self.graph = graph
        xs = [x for _, x, _ in graph.vertices()]
        ys = [y for _, _, y in graph.vertices()]
        self.min_x, self.max_x = min(xs), max(xs)
        self.min_y, self.max_y = min(ys), max(ys)
        span = max(self.max_x - self.min_x, self.max_y - self.min_y, 1e-9)
        self.margin = span * _MARGIN_FRACTION
        self.stroke = span / 400.0

    def document(self, body: list[str]) -> str:
        x0 = self.min_x - self.margin
        y0 = -(self.max_y + self.margin)
        width = (self.max_x - self.min_x) + 2 * self.margin
        height = (self.max_y - self.min_y) + 2 * self.margin
        header = (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(width)} {_fmt(height)}">'
        )
        return "\n".join([header, *body, "</svg>"]) + "\n"

    def edge_line(self, edge_id: int, attrs: str = "") -> str:
        u, v = self.graph.edge_endpoints(edge_id)
        ux, uy = self.graph.coordinates(u)
        vx, vy = self.graph.coordinates(v)
        return (
            f'<line x1="{_fmt(ux)}" y1="{_fmt(-uy)}" '
            f'x2="{_fmt(vx)}" y2="{_fmt(-vy)}"{attrs} />'
        )

    def vertex_marker(self, vertex_id: int, color: str) -> str:
        x, y = self.graph.coordinates(vertex_id)
        radius = self.stroke * 4.0
        return (
            f'<circle cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(radius)}" '
            f'fill="{color}" stroke="#000000" stroke-width="{_fmt(self.stroke)}" />'
        )


def _fmt(value: float) -> str:
    text = f"{value:.3f}"
    return "0.000" if text == "-0.000" else text
