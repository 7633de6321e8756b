"""End-to-end coverage planning: partition, route, and tour in one pass.

``plan_coverage`` produces a :class:`CoveragePlan` that is fully
self-describing (serializable with all leg lengths and workloads), so the
time-cost simulation can run from the emitted document alone.  A
single-depot homogeneous fleet planner is included as the comparison
baseline for the heterogeneous team architecture.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from sklearn.base import BaseEstimator

from .config import PlannerConfig
from .errors import ConfigError, EnergyInfeasibleError, PlanningError
from .graph import RoadGraph, check_road_graph, medoid, approx_medoid
from .partition import (
    Partition,
    compute_cluster_count,
    kmedoids_baseline,
    partition_graph,
)
from .routing import GAParams, TrobRoutes, route_trobs
from .tours import (
    Tour,
    assign_tours_lpt,
    balanced_tours,
    build_tour_graph,
    euler_circuit,
    eulerize,
    up_baseline,
)

PARTITIONERS = ("bgp", "kmedoids")
TOUR_PLANNERS = ("bup", "up")


@dataclass
class SubgraphPlan:
    """Tour set and robot assignment for one sub-graph."""

    cluster: int
    depot: int
    tours: list[Tour]
    robots: list[list[int]]
    workloads: list[float]
    tour_count: int
    fallback_used: bool
    planner: str

    @property
    def max_tour_length(self) -> float:
        return max(t.length for t in self.tours)

    @property
    def total_tour_length(self) -> float:
        return float(sum(t.length for t in self.tours))

    def to_json_dict(self) -> dict:
        return {
            "cluster": self.cluster,
            "depot": self.depot,
            "planner": self.planner,
            "tour_count": self.tour_count,
            "fallback_used": self.fallback_used,
            "workloads": [float(w) for w in self.workloads],
            "tours": [
                {
                    "robot": robot,
                    "arc": list(tour.arc),
                    "length": float(tour.length),
                    "covered": list(tour.covered),
                    "legs": [
                        {"edge": leg.edge, "dir": "forward" if leg.forward else "reverse",
                         "kind": leg.kind}
                        for leg in tour.legs
                    ],
                }
                for robot, indices in enumerate(self.robots)
                for tour in (self.tours[i] for i in indices)
            ],
        }


@dataclass
class CoveragePlan:
    """Complete deployment plan for the heterogeneous fleet."""

    config: PlannerConfig
    teams: int
    depot: int
    partition: Partition
    routes: TrobRoutes
    subgraphs: list[SubgraphPlan]
    partitioner: str
    tour_planner: str
    timings: dict = field(default_factory=dict)

    def subgraph(self, cluster: int) -> SubgraphPlan:
        for plan in self.subgraphs:
            if plan.cluster == cluster:
                return plan
        raise PlanningError(f"no sub-graph plan for cluster {cluster}")

    def to_json_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "teams": self.teams,
            "depot": self.depot,
            "partitioner": self.partitioner,
            "tour_planner": self.tour_planner,
            "partition": self.partition.to_json_dict(),
            "trob_routes": self.routes.to_json_dict(),
            "subgraphs": [plan.to_json_dict() for plan in self.subgraphs],
        }


def plan_subgraph(
    graph: RoadGraph,
    required_edges,
    depot: int,
    cfg: PlannerConfig,
    cluster: int = 1,
    method: str = "bup",
) -> SubgraphPlan:
    """Plan tours for one sub-graph and spread them over the team's robots."""
    if method not in TOUR_PLANNERS:
        raise ConfigError(f"tour planner must be one of {TOUR_PLANNERS}")
    multigraph = eulerize(graph, required_edges, depot)
    circuit = euler_circuit(multigraph, depot)
    tour_graph = build_tour_graph(circuit, graph, cfg.energy)
    if method == "bup":
        plan = balanced_tours(tour_graph, cfg.crobs_per_team, cfg.beta)
        tours = plan.tours
        tour_count = plan.tour_count
        fallback = plan.fallback_used
    else:
        tours = up_baseline(tour_graph)
        tour_count = len(tours)
        fallback = False
    robots = assign_tours_lpt(tours, cfg.crobs_per_team)
    workloads = [
        float(sum(tours[i].length for i in bucket)) for bucket in robots
    ]
    return SubgraphPlan(
        cluster=int(cluster),
        depot=int(depot),
        tours=tours,
        robots=robots,
        workloads=workloads,
        tour_count=tour_count,
        fallback_used=fallback,
        planner=method,
    )


def plan_coverage(
    graph: RoadGraph,
    cfg: PlannerConfig,
    teams: int = 1,
    depot: int | None = None,
    k: int | None = None,
    partitioner: str = "bgp",
    tour_planner: str = "bup",
    partition: Partition | None = None,
    ga: GAParams | None = None,
) -> CoveragePlan:
    """Partition the network, route the transport robots, and plan all tours.

    ``depot`` defaults to the medoid of the whole graph.  An existing
    partition can be supplied to skip the partitioning stage (the CLI uses
    this to re-plan on a stored partition).
    """
    graph = check_road_graph(graph)
    if partitioner not in PARTITIONERS:
        raise ConfigError(f"partitioner must be one of {PARTITIONERS}")
    timings: dict[str, float] = {}

    tic = time.perf_counter()
    if partition is None:
        if partitioner == "bgp":
            partition = partition_graph(graph, cfg, k=k)
        else:
            count = k if k is not None else compute_cluster_count(graph.total_length, cfg)
            partition = kmedoids_baseline(graph, count, seed=cfg.seed, cfg=cfg)
    timings["partition_s"] = time.perf_counter() - tic

    tic = time.perf_counter()
    if depot is None:
        depot = _default_depot(graph)
    centroids = [partition.centroids[c] for c in range(1, partition.k + 1)]
    if teams > partition.k:
        raise ConfigError(
            f"{teams} teams cannot each take one of only {partition.k} sub-graphs"
        )
    routes = route_trobs(graph, centroids, teams, depot, ga=ga, seed=cfg.seed)
    timings["routing_s"] = time.perf_counter() - tic

    tic = time.perf_counter()
    subgraphs = []
    for cluster in range(1, partition.k + 1):
        try:
            subgraphs.append(
                plan_subgraph(
                    graph,
                    partition.edges_of(cluster),
                    partition.centroids[cluster],
                    cfg,
                    cluster=cluster,
                    method=tour_planner,
                )
            )
        except EnergyInfeasibleError as exc:
            raise EnergyInfeasibleError(f"sub-graph {cluster}: {exc}") from exc
    timings["tours_s"] = time.perf_counter() - tic

    return CoveragePlan(
        config=cfg,
        teams=int(teams),
        depot=int(depot),
        partition=partition,
        routes=routes,
        subgraphs=subgraphs,
        partitioner=partitioner,
        tour_planner=tour_planner,
        timings=timings,
    )


@dataclass
class HomogeneousPlan:
    """Single-depot fleet plan used as the flat comparison baseline."""

    depot: int
    crobs: int
    tours: list[Tour]
    robots: list[list[int]]
    workloads: list[float]

    @property
    def max_workload(self) -> float:
        return max(self.workloads)

    def to_json_dict(self) -> dict:
        return {
            "depot": self.depot,
            "crobs": self.crobs,
            "workloads": [float(w) for w in self.workloads],
            "tours": [
                {"robot": robot, "length": float(self.tours[i].length)}
                for robot, bucket in enumerate(self.robots)
                for i in bucket
            ],
        }


def plan_homogeneous(
    graph: RoadGraph, crobs: int, cfg: PlannerConfig, depot: int | None = None
) -> HomogeneousPlan:
    """All robots deployed from one shared depot covering the whole network.

    The tour chain comes from the unconstrained shortest split of the full
    network circuit; robots receive tours by the longest-processing-time
    rule and travel at coverage speed throughout.
    """
    graph = check_road_graph(graph)
    if crobs < 1:
        raise ConfigError("crobs must be at least 1")
    if depot is None:
        depot = _default_depot(graph)
    multigraph = eulerize(graph, graph.edge_ids(), depot)
    circuit = euler_circuit(multigraph, depot)
    tour_graph = build_tour_graph(circuit, graph, cfg.energy)
    tours = up_baseline(tour_graph)
    robots = assign_tours_lpt(tours, crobs)
    workloads = [float(sum(tours[i].length for i in bucket)) for bucket in robots]
    return HomogeneousPlan(
        depot=int(depot), crobs=int(crobs), tours=tours, robots=robots,
        workloads=workloads,
    )


def _default_depot(graph: RoadGraph) -> int:
    ids = graph.vertex_ids()
    if len(ids) > 2048:
        return approx_medoid(graph, ids)
    return medoid(graph, ids)


class CoveragePlanner(BaseEstimator):
    """Estimator facade over the full planning pipeline.

    ``fit`` runs partitioning, transport routing, and tour planning on a
    :class:`RoadGraph` and exposes the results as fitted attributes
    (``plan_``, ``partition_``, ``routes_``, ``subgraph_plans_``).
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
        beta: float = 0.98,
        crob_speed: float = 2.0,
        trob_speed: float = 12.0,
        teams: int = 1,
        depot: int | None = None,
        n_clusters: int | None = None,
        partitioner: str = "bgp",
        tour_planner: str = "bup",
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
        self.beta = beta
        self.crob_speed = crob_speed
        self.trob_speed = trob_speed
        self.teams = teams
        self.depot = depot
        self.n_clusters = n_clusters
        self.partitioner = partitioner
        self.tour_planner = tour_planner
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
            beta=self.beta,
            crob_speed=self.crob_speed,
            trob_speed=self.trob_speed,
            seed=self.seed,
        )

    def fit(self, graph: RoadGraph, y=None):
        plan = plan_coverage(
            check_road_graph(graph),
            self._config(),
            teams=self.teams,
            depot=self.depot,
            k=self.n_clusters,
            partitioner=self.partitioner,
            tour_planner=self.tour_planner,
        )
        self.plan_ = plan
        self.partition_ = plan.partition
        self.routes_ = plan.routes
        self.subgraph_plans_ = plan.subgraphs
        self.labels_ = plan.partition.labels_array(graph)
        return self
