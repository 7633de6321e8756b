"""Length-balanced partitioning of a road network into connected sub-graphs.

The pipeline clusters edges around medoid centroids with a dynamic
per-cluster scale factor, merges disconnected fragments into neighbouring
clusters, and finally re-assigns boundary edges until the ratio between
the longest and shortest cluster falls under the configured threshold.
A plain k-medoids variant (fixed scale factors, no boundary pass) is kept
as the reference baseline.

All tie-breaks resolve toward smaller ids or cluster indices, so results
are a pure function of ``(graph, config, k)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator

from .config import PlannerConfig
from .errors import ConfigError, GraphValidationError, PlanningError
from .graph import (
    RoadGraph,
    check_road_graph,
    connected_edge_components,
    medoid,
    approx_medoid,
)

SCALE_FLOOR = 0.05
MEDOID_EXACT_LIMIT = 512
MEDOID_SAMPLE = 64
_EMPTY_RESEED_TRIES = 3


@dataclass
class Partition:
    """Assignment of every edge to one of ``k`` clusters.

    Cluster indices run from 1 to ``k``.  ``centroids`` maps each cluster to
    its representative vertex, ``scale_factors`` holds the per-cluster
    distance multipliers in effect when the assignment was produced, and
    ``lengths`` the summed edge length per cluster.
    """

    k: int
    cluster_of_edge: dict[int, int]
    centroids: dict[int, int]
    scale_factors: dict[int, float]
    lengths: dict[int, float]
    diagnostics: dict = field(default_factory=dict, repr=False, compare=False)

    def edges_of(self, cluster: int) -> list[int]:
        return sorted(e for e, c in self.cluster_of_edge.items() if c == cluster)

    def ratio(self) -> float:
        values = [self.lengths[c] for c in range(1, self.k + 1)]
        low = min(values)
        return math.inf if low <= 0.0 else max(values) / low

    def labels_array(self, graph: RoadGraph) -> np.ndarray:
        """Zero-based cluster labels aligned with the graph's edge order."""
        return np.array(
            [self.cluster_of_edge[e] - 1 for e in graph.edge_ids()], dtype=np.int64
        )

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "clusters": [
                {
                    "centroid": int(self.centroids[c]),
                    "scale": float(self.scale_factors[c]),
                    "edges": self.edges_of(c),
                    "length": float(self.lengths[c]),
                }
                for c in range(1, self.k + 1)
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "Partition":
        if not isinstance(doc, dict) or "k" not in doc or "clusters" not in doc:
            raise GraphValidationError(
                "partition document must be an object with 'k' and 'clusters'"
            )
        clusters = doc["clusters"]
        k = int(doc["k"])
        if len(clusters) != k:
            raise GraphValidationError(
                f"partition document lists {len(clusters)} clusters but k={k}"
            )
        cluster_of_edge: dict[int, int] = {}
        centroids: dict[int, int] = {}
        scales: dict[int, float] = {}
        lengths: dict[int, float] = {}
        for i, rec in enumerate(clusters, start=1):
            for e in rec["edges"]:
                cluster_of_edge[int(e)] = i
            centroids[i] = int(rec["centroid"])
            scales[i] = float(rec.get("scale", 1.0))
            lengths[i] = float(rec["length"])
        return cls(k, cluster_of_edge, centroids, scales, lengths)


# -- elementary operations ----------------------------------------------------


def compute_cluster_count(total_length: float, cfg: PlannerConfig) -> int:
    """Number of sub-graphs a fleet needs for a network of the given length.

    One team of ``crobs_per_team`` robots covers at most
    ``alpha * crobs_per_team * energy`` meters per deployment, so the
    network is split into the ceiling of ``total / (alpha * M * Q)`` parts.
    """
    if not total_length > 0.0:
        raise ConfigError("total length must be positive")
    capacity = cfg.alpha * cfg.crobs_per_team * cfg.energy
    return max(1, math.ceil(total_length / capacity))


def init_centroids(graph: RoadGraph, k: int) -> list[int]:
    """Farthest-point seeding of ``k`` centroid vertices.

    Starts from the smallest vertex id; every further centroid maximizes its
    minimum shortest-path distance to the ones already chosen.
    """
    if k < 1:
        raise ConfigError("k must be at least 1")
    if k > graph.n_vertices:
        raise ConfigError(
            f"k={k} exceeds the vertex count {graph.n_vertices}"
        )
    ids = np.array(graph.vertex_ids(), dtype=np.int64)
    first = int(ids.min())
    centroids = [first]
    min_dist = graph.distance_row(first).copy()
    for _ in range(k - 1):
        top = min_dist.max()
        candidates = ids[min_dist == top]
        nxt = int(candidates.min())
        centroids.append(nxt)
        np.minimum(min_dist, graph.distance_row(nxt), out=min_dist)
    return centroids


def cluster_edges(graph: RoadGraph, centroids, scale_factors) -> Partition:
    """Assign each edge to the centroid with the smallest scaled distance.

    The distance from an edge to a centroid is the scale factor times the
    smaller of the two endpoint shortest-path distances; ties go to the
    lower cluster index.
    """
    centroids = [int(c) for c in centroids]
    scales = np.asarray(list(scale_factors), dtype=np.float64)
    if len(set(centroids)) != len(centroids):
        raise ConfigError("centroids must be distinct vertices")
    if len(scales) != len(centroids):
        raise ConfigError("one scale factor per centroid is required")
    if not (scales > 0.0).all():
        raise ConfigError("scale factors must be positive")
    labels = _assign_edges(graph, centroids, scales, {})
    return _as_partition(graph, labels, centroids, scales)


def update_scale_factors(partition: Partition, cfg: PlannerConfig) -> dict[int, float]:
    """Grow scale factors of over-long clusters and shrink the under-long ones.

    The relative length deviation enters linearly and cubed; results are
    clamped to a small positive floor because a large negative deviation
    could otherwise flip the sign of the clustering distances.
    """
    total = sum(partition.lengths[c] for c in range(1, partition.k + 1))
    mean = total / partition.k
    if not mean > 0.0:
        raise ConfigError("mean cluster length must be positive")
    updated = {}
    for c in range(1, partition.k + 1):
        dev = (partition.lengths[c] - mean) / mean
        value = partition.scale_factors[c] + cfg.eta1 * dev + cfg.eta2 * dev**3
        updated[c] = max(SCALE_FLOOR, value)
    return updated


def eliminate_disconnected(graph: RoadGraph, partition: Partition) -> Partition:
    """Merge every non-maximum component of a fragmented cluster into a neighbour.

    For each cluster whose edges split into several vertex-connected
    components, the longest component stays; each remaining component moves
    to the adjacent cluster (one sharing a vertex) with the smallest current
    length.  Afterwards every cluster is a single connected component.
    """
    labels = partition.labels_array(graph)
    lengths = np.bincount(labels, weights=graph.edge_lengths, minlength=partition.k)
    _eliminate_disconnected_inplace(graph, labels, lengths, partition.k)
    return _as_partition(
        graph,
        labels,
        [partition.centroids[c] for c in range(1, partition.k + 1)],
        np.array([partition.scale_factors[c] for c in range(1, partition.k + 1)]),
    )


def reassign_boundary_edges(
    graph: RoadGraph, partition: Partition, cfg: PlannerConfig
) -> Partition:
    """Shift boundary edges toward shorter neighbouring clusters.

    Runs up to ``max_boundary_loops`` sweeps or until the max/min length
    ratio drops below ``ratio_threshold``.  A move requires the receiving
    cluster to be strictly shorter than the donor and must leave the donor
    connected and nonempty.  The best partition seen over all sweeps is
    returned.
    """
    labels = partition.labels_array(graph)
    lengths = np.bincount(labels, weights=graph.edge_lengths, minlength=partition.k)
    best_labels, best_ratio, sweeps = _boundary_loop(graph, labels, lengths, partition.k, cfg)
    result = _as_partition(
        graph,
        best_labels,
        [partition.centroids[c] for c in range(1, partition.k + 1)],
        np.array([partition.scale_factors[c] for c in range(1, partition.k + 1)]),
    )
    result.diagnostics["boundary_loops"] = sweeps
    result.diagnostics["ratio"] = best_ratio
    return result


# -- full pipelines -----------------------------------------------------------


def partition_graph(graph: RoadGraph, cfg: PlannerConfig, k: int | None = None) -> Partition:
    """Run the full balanced partitioning pipeline.

    The cluster count defaults to the per-team coverable length rule; pass
    ``k`` to override it.  Final centroids are the per-cluster medoids of
    the resulting connected clusters.
    """
    return _run_pipeline(graph, cfg, k, dynamic_scales=True, boundary_pass=True)


def kmedoids_baseline(
    graph: RoadGraph, k: int, seed: int = 0, cfg: PlannerConfig | None = None
) -> Partition:
    """Plain k-medoids reference: fixed unit scale factors, no boundary pass.

    Fragmented clusters are still merged so downstream planning stays valid.
    ``seed`` is accepted for interface symmetry; the baseline is fully
    deterministic.
    """
    cfg = cfg if cfg is not None else PlannerConfig(seed=seed)
    return _run_pipeline(graph, cfg, k, dynamic_scales=False, boundary_pass=False)


def _run_pipeline(
    graph: RoadGraph,
    cfg: PlannerConfig,
    k: int | None,
    dynamic_scales: bool,
    boundary_pass: bool,
) -> Partition:
    graph = check_road_graph(graph)
    if k is None:
        k = compute_cluster_count(graph.total_length, cfg)
    k = int(k)
    if k < 1:
        raise ConfigError("k must be at least 1")
    if k > graph.n_vertices:
        raise ConfigError(f"k={k} exceeds the vertex count {graph.n_vertices}")
    if k > graph.n_edges:
        raise ConfigError(
            f"k={k} exceeds the edge count {graph.n_edges}; clusters would be empty"
        )

    centroids = init_centroids(graph, k)
    labels, scales, cluster_loops = _cluster_loop(graph, centroids, cfg, k, dynamic_scales)

    lengths = np.bincount(labels, weights=graph.edge_lengths, minlength=k)
    _eliminate_disconnected_inplace(graph, labels, lengths, k)

    boundary_loops = 0
    if boundary_pass:
        labels, _, boundary_loops = _boundary_loop(graph, labels, lengths, k, cfg)

    final_centroids = [
        _cluster_medoid(graph, labels, i) for i in range(k)
    ]
    result = _as_partition(graph, labels, final_centroids, scales)
    result.diagnostics["cluster_loops"] = cluster_loops
    result.diagnostics["boundary_loops"] = boundary_loops
    return result


# -- clustering loop ----------------------------------------------------------


def _assign_edges(graph, centroids, scales, edge_min_cache) -> np.ndarray:
    cost = np.empty((len(centroids), graph.n_edges))
    for i, c in enumerate(centroids):
        edge_min = edge_min_cache.get(c)
        if edge_min is None:
            row = graph.distance_row(c)
            edge_min = np.minimum(
                row[graph.edge_source_indices], row[graph.edge_target_indices]
            )
            edge_min_cache[c] = edge_min
        np.multiply(edge_min, scales[i], out=cost[i])
    return np.argmin(cost, axis=0)


def _cluster_loop(graph, centroids, cfg, k, dynamic_scales):
    scales = np.ones(k, dtype=np.float64)
    edge_min_cache: dict[int, np.ndarray] = {}
    epsilon = cfg.ratio_threshold

    best_labels: np.ndarray | None = None
    best_scales = scales.copy()
    ratio_best = math.inf
    ratio = math.inf
    prev_labels: np.ndarray | None = None
    loops = 0

    while loops < cfg.max_cluster_loops and ratio > epsilon:
        labels = _assign_edges(graph, centroids, scales, edge_min_cache)
        centroids, scales = _repair_empty_clusters(
            graph, labels, centroids, scales, edge_min_cache
        )
        lengths = np.bincount(labels, weights=graph.edge_lengths, minlength=k)
        ratio = _ratio(lengths)
        if ratio < ratio_best:
            ratio_best = ratio
            best_labels = labels.copy()
            best_scales = scales.copy()
            centroids = [_cluster_medoid(graph, labels, i) for i in range(k)]
        if dynamic_scales:
            scales = _updated_scales(scales, lengths, cfg)
        loops += 1
        if not dynamic_scales and prev_labels is not None and np.array_equal(labels, prev_labels):
            break  # fixed point: assignments can no longer change
        prev_labels = labels

    if best_labels is None:
        raise PlanningError("clustering produced no usable partition")
    return best_labels, best_scales, loops


def _updated_scales(scales, lengths, cfg) -> np.ndarray:
    mean = lengths.sum() / len(lengths)
    dev = (lengths - mean) / mean
    return np.maximum(SCALE_FLOOR, scales + cfg.eta1 * dev + cfg.eta2 * dev**3)


def _repair_empty_clusters(graph, labels, centroids, scales, edge_min_cache):
    """Guarantee every cluster keeps at least one edge.

    Empty clusters first get their centroid re-seeded at the vertex farthest
    from all other centroids; if assignments stay degenerate the cluster
    steals its nearest edge from a donor with at least two edges.
    """
    k = len(centroids)
    for attempt in range(_EMPTY_RESEED_TRIES + 1):
        counts = np.bincount(labels, minlength=k)
        empty = [i for i in range(k) if counts[i] == 0]
        if not empty:
            return centroids, scales
        if attempt < _EMPTY_RESEED_TRIES:
            centroids = list(centroids)
            ids = np.array(graph.vertex_ids(), dtype=np.int64)
            for i in empty:
                others = [c for j, c in enumerate(centroids) if j != i]
                min_dist = np.full(graph.n_vertices, np.inf)
                for c in others:
                    np.minimum(min_dist, graph.distance_row(c), out=min_dist)
                taken = np.isin(ids, np.array(centroids, dtype=np.int64))
                min_dist = np.where(taken, -np.inf, min_dist)
                top = min_dist.max()
                centroids[i] = int(ids[min_dist == top].min())
                scales[i] = 1.0
            labels[:] = _assign_edges(graph, centroids, scales, edge_min_cache)
        else:
            counts = np.bincount(labels, minlength=k)
            for i in [j for j in range(k) if counts[j] == 0]:
                edge_min = edge_min_cache[centroids[i]]
                order = np.lexsort((np.arange(graph.n_edges), edge_min))
                for pos in order:
                    if counts[labels[pos]] >= 2:
                        counts[labels[pos]] -= 1
                        labels[pos] = i
                        counts[i] += 1
                        break
                else:
                    raise PlanningError("cannot repair empty cluster")
            return centroids, scales
    return centroids, scales


def _cluster_medoid(graph, labels, cluster_index) -> int:
    mask = labels == cluster_index
    if not mask.any():
        raise PlanningError(f"cluster {cluster_index + 1} has no edges")
    member_positions = np.unique(
        np.concatenate(
            [graph.edge_source_indices[mask], graph.edge_target_indices[mask]]
        )
    )
    ids = [graph.vertex_id_at(int(p)) for p in member_positions]
    if len(ids) <= MEDOID_EXACT_LIMIT:
        return medoid(graph, ids)
    return approx_medoid(graph, ids, sample_size=MEDOID_SAMPLE)


# -- disconnected cluster elimination ------------------------------------------


def _eliminate_disconnected_inplace(graph, labels, lengths, k) -> None:
    adjacency = graph.adjacency()
    for cluster in range(k):
        edge_ids = [
            graph.edge_id_at(pos) for pos in np.flatnonzero(labels == cluster)
        ]
        if not edge_ids:
            raise PlanningError(f"cluster {cluster + 1} is empty")
        components = connected_edge_components(graph, edge_ids)
        for component in components[1:]:
            target = _adjacent_cluster_of_component(
                graph, labels, lengths, adjacency, component, cluster
            )
            comp_positions = [graph.edge_index(e) for e in component]
            moved = float(graph.edge_lengths[comp_positions].sum())
            for pos in comp_positions:
                labels[pos] = target
            lengths[cluster] -= moved
            lengths[target] += moved


def _adjacent_cluster_of_component(graph, labels, lengths, adjacency, component, cluster):
    neighbours: set[int] = set()
    for e in component:
        pos = graph.edge_index(e)
        for vertex in (graph.edge_source_indices[pos], graph.edge_target_indices[pos]):
            for other_pos, _ in adjacency[int(vertex)]:
                other_cluster = int(labels[other_pos])
                if other_cluster != cluster:
                    neighbours.add(other_cluster)
    if not neighbours:
        raise PlanningError(
            "component has no adjacent cluster; the host graph cannot be connected"
        )
    return min(neighbours, key=lambda j: (lengths[j], j))


# -- boundary edge re-assignment ------------------------------------------------


def _boundary_loop(graph, labels, lengths, k, cfg):
    epsilon = cfg.ratio_threshold
    ratio = _ratio(lengths)
    ratio_best = ratio
    best_labels = labels.copy()
    adjacency = graph.adjacency()
    bridge_cache: dict[int, set[int]] = {}
    sweeps = 0

    while sweeps < cfg.max_boundary_loops and ratio > epsilon:
        boundary = _boundary_edges(graph, labels, adjacency)
        moved_any = False
        for pos in boundary:
            donor = int(labels[pos])
            targets = _adjacent_clusters_of_edge(graph, labels, adjacency, pos, donor)
            if not targets:
                continue
            target = min(targets, key=lambda j: (lengths[j], j))
            if not lengths[target] < lengths[donor]:
                continue
            if not _removal_keeps_connected(graph, labels, adjacency, pos, donor, bridge_cache):
                continue
            labels[pos] = target
            moved = float(graph.edge_lengths[pos])
            lengths[donor] -= moved
            lengths[target] += moved
            bridge_cache.pop(donor, None)
            bridge_cache.pop(target, None)
            moved_any = True
        ratio = _ratio(lengths)
        if ratio < ratio_best:
            ratio_best = ratio
            best_labels = labels.copy()
        sweeps += 1
        if not moved_any:
            break
    return best_labels, ratio_best, sweeps


def _boundary_edges(graph, labels, adjacency) -> list[int]:
    """Edge positions touching a foreign cluster, longest first, ties by id."""
    vertex_clusters: list[set[int]] = [set() for _ in range(graph.n_vertices)]
    for pos in range(graph.n_edges):
        c = int(labels[pos])
        vertex_clusters[int(graph.edge_source_indices[pos])].add(c)
        vertex_clusters[int(graph.edge_target_indices[pos])].add(c)
    boundary = []
    for pos in range(graph.n_edges):
        c = int(labels[pos])
        u = int(graph.edge_source_indices[pos])
        v = int(graph.edge_target_indices[pos])
        if len(vertex_clusters[u] - {c}) > 0 or len(vertex_clusters[v] - {c}) > 0:
            boundary.append(pos)
    boundary.sort(key=lambda p: (-graph.edge_lengths[p], graph.edge_id_at(p)))
    return boundary


def _adjacent_clusters_of_edge(graph, labels, adjacency, pos, donor) -> set[int]:
    targets: set[int] = set()
    for vertex in (graph.edge_source_indices[pos], graph.edge_target_indices[pos]):
        for other_pos, _ in adjacency[int(vertex)]:
            c = int(labels[other_pos])
            if c != donor:
                targets.add(c)
    return targets


def _removal_keeps_connected(graph, labels, adjacency, pos, donor, bridge_cache) -> bool:
    positions = np.flatnonzero(labels == donor)
    if len(positions) < 2:
        return False
    bridges = bridge_cache.get(donor)
    if bridges is None:
        bridges = _bridge_positions(graph, positions)
        bridge_cache[donor] = bridges
    if pos not in bridges:
        return True
    # A bridge is still removable when it dangles: all other donor edges sit
    # on one side, which stays connected on its own.
    for vertex in (graph.edge_source_indices[pos], graph.edge_target_indices[pos]):
        degree = sum(
            1 for other_pos, _ in adjacency[int(vertex)] if labels[other_pos] == donor
        )
        if degree == 1:
            return True
    return False


def _bridge_positions(graph, positions) -> set[int]:
    """Bridge edges of the sub-multigraph induced by the given edge positions."""
    adj: dict[int, list[tuple[int, int]]] = {}
    for pos in positions:
        u = int(graph.edge_source_indices[pos])
        v = int(graph.edge_target_indices[pos])
        adj.setdefault(u, []).append((int(pos), v))
        adj.setdefault(v, []).append((int(pos), u))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[int] = set()
    counter = 0

    def _other_endpoint(edge_pos: int, vertex: int) -> int:
        u = int(graph.edge_source_indices[edge_pos])
        v = int(graph.edge_target_indices[edge_pos])
        return u if v == vertex else v

    for root in adj:
        if root in disc:
            continue
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        while stack:
            vertex, via_pos, idx = stack.pop()
            if idx == 0:
                if vertex in disc:
                    # Stale push: the vertex was reached first along another
                    # edge, so via_pos acts as a back edge for its pusher.
                    parent = _other_endpoint(via_pos, vertex)
                    low[parent] = min(low[parent], disc[vertex])
                    continue
                disc[vertex] = low[vertex] = counter
                counter += 1
            if idx < len(adj[vertex]):
                stack.append((vertex, via_pos, idx + 1))
                edge_pos, other = adj[vertex][idx]
                if edge_pos == via_pos:
                    continue
                if other in disc:
                    low[vertex] = min(low[vertex], disc[other])
                else:
                    stack.append((other, edge_pos, 0))
            elif via_pos != -1:
                parent = _other_endpoint(via_pos, vertex)
                low[parent] = min(low[parent], low[vertex])
                if low[vertex] > disc[parent]:
                    bridges.add(int(via_pos))
    return bridges


# -- shared helpers -------------------------------------------------------------


def _ratio(lengths) -> float:
    low = float(lengths.min())
    if low <= 0.0:
        return math.inf
    return float(lengths.max()) / low


def _as_partition(graph, labels, centroids, scales) -> Partition:
    k = len(centroids)
    lengths = np.bincount(labels, weights=graph.edge_lengths, minlength=k)
    cluster_of_edge = {
        graph.edge_id_at(pos): int(labels[pos]) + 1 for pos in range(graph.n_edges)
    }
    return Partition(
        k=k,
        cluster_of_edge=cluster_of_edge,
        centroids={i + 1: int(c) for i, c in enumerate(centroids)},
        scale_factors={i + 1: float(s) for i, s in enumerate(scales)},
        lengths={i + 1: float(v) for i, v in enumerate(lengths)},
    )


# -- estimator facade ------------------------------------------------------------


class BalancedGraphPartitioner(BaseEstimator):
    """Clusterer that splits a road network into length-balanced sub-graphs.

    Follows the scikit-learn estimator protocol: hyperparameters are
    constructor arguments, :meth:`fit` computes the partition and exposes it
    through trailing-underscore attributes, and ``get_params`` /
    ``set_params`` make the object grid-searchable and cloneable.

    Attributes after ``fit``:

    labels_
        Zero-based cluster index per edge, in the graph's edge order.
    partition_
        The full :class:`Partition` domain object (1-based indices).
    centroids_, scale_factors_, cluster_lengths_, k_, ratio_, n_iter_
        Convenience views of the partition and loop diagnostics.
    """

    def __init__(
        self,
        alpha: float = 0.59,
        crobs_per_team: int = 5,
        energy: float = 25_000.0,
        ratio_threshold: float = 1.05,
        max_cluster_loops: int = 1000,
        max_boundary_loops: int = 100,
        eta1: float = 0.02,
        eta2: float = 0.1,
        n_clusters: int | None = None,
        seed: int = 0,
    ):
        self.alpha = alpha
        self.crobs_per_team = crobs_per_team
        self.energy = energy
        self.ratio_threshold = ratio_threshold
        self.max_cluster_loops = max_cluster_loops
        self.max_boundary_loops = max_boundary_loops
        self.eta1 = eta1
        self.eta2 = eta2
        self.n_clusters = n_clusters
        self.seed = seed

    def _config(self) -> PlannerConfig:
        return PlannerConfig(
            alpha=self.alpha,
            crobs_per_team=self.crobs_per_team,
            energy=self.energy,
            ratio_threshold=self.ratio_threshold,
            max_cluster_loops=self.max_cluster_loops,
            max_boundary_loops=self.max_boundary_loops,
            eta1=self.eta1,
            eta2=self.eta2,
            seed=self.seed,
        )

    def fit(self, graph: RoadGraph, y=None):
        graph = check_road_graph(graph)
        partition = partition_graph(graph, self._config(), k=self.n_clusters)
        self._store(graph, partition)
        return self

    def fit_predict(self, graph: RoadGraph, y=None) -> np.ndarray:
        return self.fit(graph).labels_

    def _store(self, graph, partition: Partition) -> None:
        self.partition_ = partition
        self.k_ = partition.k
        self.labels_ = partition.labels_array(graph)
        self.centroids_ = [partition.centroids[c] for c in range(1, partition.k + 1)]
        self.scale_factors_ = np.array(
            [partition.scale_factors[c] for c in range(1, partition.k + 1)]
        )
        self.cluster_lengths_ = np.array(
            [partition.lengths[c] for c in range(1, partition.k + 1)]
        )
        self.ratio_ = partition.ratio()
        self.n_iter_ = partition.diagnostics.get("cluster_loops", 0)


class KMedoidsPartitioner(BalancedGraphPartitioner):
    """Reference k-medoids clusterer: no scale factors, no boundary pass."""

    def __init__(
        self,
        alpha: float = 0.59,
        crobs_per_team: int = 5,
        energy: float = 25_000.0,
        ratio_threshold: float = 1.05,
        max_cluster_loops: int = 1000,
        n_clusters: int | None = None,
        seed: int = 0,
    ):
        self.alpha = alpha
        self.crobs_per_team = crobs_per_team
        self.energy = energy
        self.ratio_threshold = ratio_threshold
        self.max_cluster_loops = max_cluster_loops
        self.n_clusters = n_clusters
        self.seed = seed

    def fit(self, graph: RoadGraph, y=None):
        graph = check_road_graph(graph)
        cfg = PlannerConfig(
            alpha=self.alpha,
            crobs_per_team=self.crobs_per_team,
            energy=self.energy,
            ratio_threshold=self.ratio_threshold,
            max_cluster_loops=self.max_cluster_loops,
            seed=self.seed,
        )
        k = self.n_clusters
        if k is None:
            k = compute_cluster_count(graph.total_length, cfg)
        partition = kmedoids_baseline(graph, k, seed=self.seed, cfg=cfg)
        self._store(graph, partition)
        return self
