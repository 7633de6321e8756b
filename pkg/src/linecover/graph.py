"""Road-network graph model, shortest-path machinery, and connectivity utilities.

The graph is undirected with positive edge lengths and planar vertex
coordinates in meters.  Geographic inputs must be projected to a planar
frame before loading; no geodesic math happens here.  Parallel edges are
kept (real road networks contain them), self-loops are rejected, and the
graph must form a single connected component.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _csgraph_dijkstra

from .errors import GraphValidationError

_NO_PRED = -1


class RoadGraph:
    """Validated, immutable road-network graph.

    Vertices are ``(id, x, y)`` triples and edges ``(id, u, v, length)``
    with integer ids.  Construction validates the data model and keeps the
    input ordering, so serializing and re-loading reproduces the instance
    exactly.  Single-source shortest-path results are cached per source
    vertex; the object is safe to share read-only across workers.
    """

    def __init__(self, vertices, edges):
        vertices = [(int(i), float(x), float(y)) for i, x, y in vertices]
        edges = [
            (int(e), int(u), int(v), float(length)) for e, u, v, length in edges
        ]
        if not vertices:
            raise GraphValidationError("graph has no vertices")
        if not edges:
            raise GraphValidationError("graph has no edges")

        self._vids = np.array([v[0] for v in vertices], dtype=np.int64)
        self._vindex = {int(i): pos for pos, i in enumerate(self._vids)}
        if len(self._vindex) != len(vertices):
            dup = _first_duplicate(v[0] for v in vertices)
            raise GraphValidationError(f"duplicate vertex id {dup}")
        self._coords = np.array([(v[1], v[2]) for v in vertices], dtype=np.float64)

        self._eids = np.array([e[0] for e in edges], dtype=np.int64)
        self._eindex = {int(e): pos for pos, e in enumerate(self._eids)}
        if len(self._eindex) != len(edges):
            dup = _first_duplicate(e[0] for e in edges)
            raise GraphValidationError(f"duplicate edge id {dup}")

        eu = []
        ev = []
        for eid, u, v, length in edges:
            if u not in self._vindex:
                raise GraphValidationError(
                    f"edge {eid}: endpoint {u} is not a known vertex"
                )
            if v not in self._vindex:
                raise GraphValidationError(
                    f"edge {eid}: endpoint {v} is not a known vertex"
                )
            if u == v:
                raise GraphValidationError(f"edge {eid}: self-loop at vertex {u}")
            if not (length > 0.0) or not np.isfinite(length):
                raise GraphValidationError(
                    f"edge {eid}: non-positive length {length!r}"
                )
            eu.append(self._vindex[u])
            ev.append(self._vindex[v])
        self._eu = np.array(eu, dtype=np.int64)
        self._ev = np.array(ev, dtype=np.int64)
        self._elen = np.array([e[3] for e in edges], dtype=np.float64)

        self._check_connected()

        self._adjacency = None
        self._sp_matrix = None
        self._dist_cache: dict[int, np.ndarray] = {}
        self._pred_cache: dict[int, np.ndarray] = {}
        self._pair_edge: dict[tuple[int, int], int] | None = None

    # -- basic accessors ------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self._vids)

    @property
    def n_edges(self) -> int:
        return len(self._eids)

    @property
    def total_length(self) -> float:
        return float(self._elen.sum())

    def vertex_ids(self) -> list[int]:
        return [int(i) for i in self._vids]

    def edge_ids(self) -> list[int]:
        return [int(i) for i in self._eids]

    def has_vertex(self, vertex_id: int) -> bool:
        return int(vertex_id) in self._vindex

    def has_edge(self, edge_id: int) -> bool:
        return int(edge_id) in self._eindex

    def coordinates(self, vertex_id: int) -> tuple[float, float]:
        pos = self._require_vertex(vertex_id)
        return float(self._coords[pos, 0]), float(self._coords[pos, 1])

    def edge_endpoints(self, edge_id: int) -> tuple[int, int]:
        pos = self._require_edge(edge_id)
        return int(self._vids[self._eu[pos]]), int(self._vids[self._ev[pos]])

    def edge_length(self, edge_id: int) -> float:
        return float(self._elen[self._require_edge(edge_id)])

    def vertices(self) -> list[tuple[int, float, float]]:
        return [
            (int(i), float(x), float(y))
            for i, (x, y) in zip(self._vids, self._coords)
        ]

    def edges(self) -> list[tuple[int, int, int, float]]:
        return [
            (int(e), int(self._vids[u]), int(self._vids[v]), float(w))
            for e, u, v, w in zip(self._eids, self._eu, self._ev, self._elen)
        ]

    # -- index-level views used by the planning modules ------------------

    def vertex_index(self, vertex_id: int) -> int:
        return self._require_vertex(vertex_id)

    def vertex_id_at(self, index: int) -> int:
        return int(self._vids[index])

    def edge_index(self, edge_id: int) -> int:
        return self._require_edge(edge_id)

    def edge_id_at(self, index: int) -> int:
        return int(self._eids[index])

    @property
    def edge_source_indices(self) -> np.ndarray:
        return self._eu

    @property
    def edge_target_indices(self) -> np.ndarray:
        return self._ev

    @property
    def edge_lengths(self) -> np.ndarray:
        return self._elen

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of ``(edge_position, other_vertex_position)``."""
        if self._adjacency is None:
            adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n_vertices)]
            for pos in range(self.n_edges):
                u = int(self._eu[pos])
                v = int(self._ev[pos])
                adj[u].append((pos, v))
                adj[v].append((pos, u))
            self._adjacency = adj
        return self._adjacency

    # -- shortest paths ---------------------------------------------------

    def distance_row(self, source_id: int) -> np.ndarray:
        """Shortest-path distances from ``source_id`` to every vertex (by index).

        Rows are cached per source; do not mutate the returned array.
        """
        source_id = int(source_id)
        row = self._dist_cache.get(source_id)
        if row is None:
            pos = self._require_vertex(source_id)
            row = _csgraph_dijkstra(self._matrix(), directed=True, indices=pos)
            row.flags.writeable = False
            self._dist_cache[source_id] = row
        return row

    def distance_matrix(self, source_ids, cache: bool = False) -> np.ndarray:
        """Bulk shortest-path rows for several sources in one sweep."""
        source_ids = [int(s) for s in source_ids]
        missing = sorted({s for s in source_ids if s not in self._dist_cache})
        fetched: dict[int, np.ndarray] = {}
        if missing:
            idx = np.array([self._require_vertex(s) for s in missing])
            rows = _csgraph_dijkstra(self._matrix(), directed=True, indices=idx)
            if rows.ndim == 1:
                rows = rows[None, :]
            for s, row in zip(missing, rows):
                if cache:
                    row.flags.writeable = False
                    self._dist_cache[s] = row
                else:
                    fetched[s] = row
        return np.vstack(
            [self._dist_cache[s] if s in self._dist_cache else fetched[s]
             for s in source_ids]
        )

    def predecessor_row(self, source_id: int) -> np.ndarray:
        """Shortest-path-tree predecessors (vertex positions) from a source.

        Ties between equally short predecessors are broken by the smaller
        vertex id, which keeps reconstructed paths deterministic.
        """
        source_id = int(source_id)
        pred = self._pred_cache.get(source_id)
        if pred is None:
            dist = self.distance_row(source_id)
            pred = self._derive_predecessors(source_id, dist)
            self._pred_cache[source_id] = pred
        return pred

    def shortest_path(self, source_id: int, target_id: int) -> list[int]:
        """Vertex ids along a shortest path, both endpoints included."""
        src_pos = self._require_vertex(source_id)
        dst_pos = self._require_vertex(target_id)
        pred = self.predecessor_row(source_id)
        path = [dst_pos]
        while path[-1] != src_pos:
            prev = int(pred[path[-1]])
            if prev == _NO_PRED:
                raise GraphValidationError(
                    f"no path from vertex {source_id} to {target_id}"
                )
            path.append(prev)
        return [int(self._vids[p]) for p in reversed(path)]

    def min_edge_between(self, u_id: int, v_id: int) -> int:
        """Edge id of the shortest edge joining two adjacent vertices."""
        if self._pair_edge is None:
            pair: dict[tuple[int, int], int] = {}
            for pos in range(self.n_edges):
                a = int(self._eu[pos])
                b = int(self._ev[pos])
                key = (a, b) if a < b else (b, a)
                best = pair.get(key)
                if best is None:
                    pair[key] = pos
                else:
                    cur = (self._elen[pos], self._eids[pos])
                    old = (self._elen[best], self._eids[best])
                    if cur < old:
                        pair[key] = pos
            self._pair_edge = pair
        a = self._require_vertex(u_id)
        b = self._require_vertex(v_id)
        key = (a, b) if a < b else (b, a)
        pos = self._pair_edge.get(key)
        if pos is None:
            raise GraphValidationError(f"vertices {u_id} and {v_id} are not adjacent")
        return int(self._eids[pos])

    # -- internals --------------------------------------------------------

    def _matrix(self) -> csr_matrix:
        if self._sp_matrix is None:
            n = self.n_vertices
            rows = np.concatenate([self._eu, self._ev])
            cols = np.concatenate([self._ev, self._eu])
            data = np.concatenate([self._elen, self._elen])
            # Parallel edges must collapse to the minimum length; a plain
            # coo->csr conversion would sum duplicates instead.
            order = np.lexsort((data, cols, rows))
            rows, cols, data = rows[order], cols[order], data[order]
            keep = np.ones(len(rows), dtype=bool)
            keep[1:] = (rows[1:] != rows[:-1]) | (cols[1:] != cols[:-1])
            self._sp_matrix = csr_matrix(
                (data[keep], (rows[keep], cols[keep])), shape=(n, n)
            )
        return self._sp_matrix

    def _derive_predecessors(self, source_id: int, dist: np.ndarray) -> np.ndarray:
        n = self.n_vertices
        heads = np.concatenate([self._eu, self._ev])
        tails = np.concatenate([self._ev, self._eu])
        weight = np.concatenate([self._elen, self._elen])
        on_tree = dist[heads] + weight == dist[tails]
        best_id = np.full(n, np.iinfo(np.int64).max, dtype=np.int64)
        np.minimum.at(best_id, tails[on_tree], self._vids[heads[on_tree]])
        pred = np.full(n, _NO_PRED, dtype=np.int64)
        found = best_id != np.iinfo(np.int64).max
        idx_of = np.vectorize(self._vindex.__getitem__, otypes=[np.int64])
        if found.any():
            pred[found] = idx_of(best_id[found])
        pred[self._require_vertex(source_id)] = _NO_PRED
        return pred

    def _check_connected(self) -> None:
        uf = _UnionFind(self.n_vertices)
        for u, v in zip(self._eu, self._ev):
            uf.union(int(u), int(v))
        roots = {uf.find(i) for i in range(self.n_vertices)}
        if len(roots) > 1:
            raise GraphValidationError(
                f"graph is disconnected ({len(roots)} components)"
            )

    def _require_vertex(self, vertex_id: int) -> int:
        try:
            return self._vindex[int(vertex_id)]
        except KeyError:
            raise GraphValidationError(f"unknown vertex id {vertex_id}") from None

    def _require_edge(self, edge_id: int) -> int:
        try:
            return self._eindex[int(edge_id)]
        except KeyError:
            raise GraphValidationError(f"unknown edge id {edge_id}") from None


def check_road_graph(graph) -> RoadGraph:
    """Validation helper for estimator inputs."""
    if not isinstance(graph, RoadGraph):
        raise TypeError(
            f"expected a RoadGraph, got {type(graph).__name__}; "
            "load or generate one via linecover.io / linecover.synth"
        )
    return graph


@dataclass(frozen=True)
class DistanceOracle:
    """Single-source shortest-path result with path reconstruction.

    ``distances`` maps vertex id to shortest-path length in meters and the
    predecessor relation reconstructs one deterministic shortest path per
    target (ties resolved toward smaller vertex ids).
    """

    graph: RoadGraph
    source: int

    @property
    def distances(self) -> dict[int, float]:
        row = self.graph.distance_row(self.source)
        return {int(v): float(row[self.graph.vertex_index(v)])
                for v in self.graph.vertex_ids()}

    def distance(self, vertex_id: int) -> float:
        row = self.graph.distance_row(self.source)
        return float(row[self.graph.vertex_index(vertex_id)])

    def path_to(self, vertex_id: int) -> list[int]:
        return self.graph.shortest_path(self.source, vertex_id)


def shortest_from(graph: RoadGraph, source: int) -> DistanceOracle:
    """Exact single-source shortest-path oracle over edge lengths."""
    graph.distance_row(source)  # validates the source and warms the cache
    return DistanceOracle(graph=graph, source=int(source))


def connected_edge_components(graph: RoadGraph, edge_ids) -> list[list[int]]:
    """Partition an edge subset into components connected via shared vertices.

    Components are ordered by descending total length, ties by their
    smallest edge id; edges inside a component are sorted by id.
    """
    positions = [graph.edge_index(e) for e in edge_ids]
    if not positions:
        return []
    uf = _UnionFind(graph.n_vertices)
    for pos in positions:
        uf.union(int(graph.edge_source_indices[pos]),
                 int(graph.edge_target_indices[pos]))
    groups: dict[int, list[int]] = {}
    for pos in positions:
        root = uf.find(int(graph.edge_source_indices[pos]))
        groups.setdefault(root, []).append(pos)
    components = []
    for members in groups.values():
        total = float(sum(graph.edge_lengths[p] for p in members))
        ids = sorted(graph.edge_id_at(p) for p in members)
        components.append((total, ids))
    components.sort(key=lambda c: (-c[0], c[1][0]))
    return [ids for _, ids in components]


def medoid(graph: RoadGraph, vertex_ids) -> int:
    """Vertex of the subset minimizing summed shortest-path distance to the rest.

    Distances are measured in the full graph.  Ties resolve to the smallest
    vertex id.
    """
    ids = sorted({int(v) for v in vertex_ids})
    if not ids:
        raise GraphValidationError("medoid of an empty vertex subset")
    if len(ids) == 1:
        graph.vertex_index(ids[0])
        return ids[0]
    rows = graph.distance_matrix(ids, cache=True)
    cols = np.array([graph.vertex_index(v) for v in ids])
    sums = rows[:, cols].sum(axis=1)
    return int(ids[int(np.argmin(sums))])


def approx_medoid(graph: RoadGraph, vertex_ids, sample_size: int = 64) -> int:
    """Medoid with distance sums taken over a deterministic systematic sample.

    Used by the partitioner on large clusters where the exact computation
    would need one shortest-path sweep per member vertex.  With
    ``sample_size`` at or above the subset size this is exact.
    """
    ids = sorted({int(v) for v in vertex_ids})
    if not ids:
        raise GraphValidationError("medoid of an empty vertex subset")
    if len(ids) <= sample_size:
        return medoid(graph, ids)
    step = len(ids) / sample_size
    sample = [ids[int(i * step)] for i in range(sample_size)]
    rows = graph.distance_matrix(sample, cache=True)
    cols = np.array([graph.vertex_index(v) for v in ids])
    sums = rows[:, cols].sum(axis=0)
    return int(ids[int(np.argmin(sums))])


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def _first_duplicate(items):
    seen = set()
    for item in items:
        if item in seen:
            return item
        seen.add(item)
    return None
