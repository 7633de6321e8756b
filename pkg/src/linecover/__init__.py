"""Balanced multi-robot line coverage planning on road-network graphs.

Splits a road network into length-balanced connected sub-graphs, routes
transport robots between sub-graph centroids, and extracts energy-feasible,
length-balanced coverage tours for the robots of each team.
"""

from .config import PlannerConfig
from .errors import (
    ConfigError,
    EnergyInfeasibleError,
    GraphValidationError,
    LineCoverError,
    ParseError,
    PlanningError,
)
from .graph import (
    DistanceOracle,
    RoadGraph,
    check_road_graph,
    connected_edge_components,
    medoid,
    shortest_from,
)
from .io import canonical_json, load_graph, save_graph
from .metrics import (
    SimulationResult,
    compare_report,
    report_to_csv,
    report_to_json,
    rsd,
    simulate,
    simulate_homogeneous,
    utilization,
)
from .partition import (
    BalancedGraphPartitioner,
    KMedoidsPartitioner,
    Partition,
    cluster_edges,
    compute_cluster_count,
    eliminate_disconnected,
    init_centroids,
    kmedoids_baseline,
    partition_graph,
    reassign_boundary_edges,
    update_scale_factors,
)
from .planner import (
    CoveragePlan,
    CoveragePlanner,
    HomogeneousPlan,
    SubgraphPlan,
    plan_coverage,
    plan_homogeneous,
    plan_subgraph,
)
from .routing import GAParams, TrobRoutes, route_trobs
from .synth import generate_synthetic_network
from .tours import (
    BalancedTourPlan,
    EulerCircuit,
    EulerMultigraph,
    Leg,
    Tour,
    TourGraph,
    assign_tours_lpt,
    balanced_tours,
    build_tour_graph,
    compute_tour_count,
    dp_exact_arcs,
    euler_circuit,
    eulerize,
    min_hops,
    up_baseline,
)

__version__ = "0.1.0"

__all__ = [
    "PlannerConfig",
    "LineCoverError",
    "ParseError",
    "GraphValidationError",
    "ConfigError",
    "EnergyInfeasibleError",
    "PlanningError",
    "RoadGraph",
    "DistanceOracle",
    "check_road_graph",
    "shortest_from",
    "connected_edge_components",
    "medoid",
    "load_graph",
    "save_graph",
    "canonical_json",
    "generate_synthetic_network",
    "Partition",
    "compute_cluster_count",
    "init_centroids",
    "cluster_edges",
    "update_scale_factors",
    "eliminate_disconnected",
    "reassign_boundary_edges",
    "partition_graph",
    "kmedoids_baseline",
    "BalancedGraphPartitioner",
    "KMedoidsPartitioner",
    "GAParams",
    "TrobRoutes",
    "route_trobs",
    "Leg",
    "EulerMultigraph",
    "EulerCircuit",
    "TourGraph",
    "Tour",
    "BalancedTourPlan",
    "eulerize",
    "euler_circuit",
    "build_tour_graph",
    "min_hops",
    "compute_tour_count",
    "dp_exact_arcs",
    "balanced_tours",
    "up_baseline",
    "assign_tours_lpt",
    "SubgraphPlan",
    "CoveragePlan",
    "HomogeneousPlan",
    "CoveragePlanner",
    "plan_subgraph",
    "plan_coverage",
    "plan_homogeneous",
    "rsd",
    "utilization",
    "simulate",
    "simulate_homogeneous",
    "SimulationResult",
    "compare_report",
    "report_to_csv",
    "report_to_json",
]
