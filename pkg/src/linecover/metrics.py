"""Balance metrics, the time-cost simulation, and the planner comparison harness."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .config import PlannerConfig
from .errors import ConfigError, LineCoverError
from .graph import RoadGraph
from .planner import (
    CoveragePlan,
    HomogeneousPlan,
    PARTITIONERS,
    TOUR_PLANNERS,
    plan_subgraph,
)
from .partition import compute_cluster_count, kmedoids_baseline, partition_graph

REPORT_COLUMNS = (
    "planner",
    "seed",
    "n_subgraphs",
    "runtime_s",
    "total_tour_length",
    "mean_max_tour_length",
    "mean_rsd",
    "mean_utilization",
    "error",
)


def rsd(values) -> float:
    """Relative standard deviation in percent (population deviation over mean)."""
    data = [float(v) for v in values]
    if not data:
        raise ConfigError("rsd of an empty sequence")
    mean = sum(data) / len(data)
    if not mean > 0.0:
        raise ConfigError("rsd requires a positive mean")
    variance = sum((v - mean) ** 2 for v in data) / len(data)
    return 100.0 * math.sqrt(variance) / mean


def utilization(workloads) -> float:
    """Mean over robots of workload divided by the maximum workload."""
    data = [float(w) for w in workloads]
    if not data:
        raise ConfigError("utilization of an empty sequence")
    top = max(data)
    if not top > 0.0:
        raise ConfigError("utilization requires a positive maximum workload")
    return sum(w / top for w in data) / len(data)


# -- simulation --------------------------------------------------------------------


@dataclass
class SimulationResult:
    team_times: list[float]
    overall: float
    transit_times: list[float]
    coverage_times: list[float]
    events: list[dict]

    def to_json_dict(self) -> dict:
        return {
            "overall_s": float(self.overall),
            "teams": [
                {
                    "team": t,
                    "completion_s": float(self.team_times[t]),
                    "transit_s": float(self.transit_times[t]),
                    "coverage_s": float(self.coverage_times[t]),
                }
                for t in range(len(self.team_times))
            ],
            "events": self.events,
        }


def simulate(plan, cfg: PlannerConfig | None = None) -> SimulationResult:
    """Execution timeline of a coverage plan.

    Each team drives its transport legs at transport speed and, at every
    sub-graph, waits for its slowest coverage robot (workload at coverage
    speed).  Teams run in parallel; recharge and handling times are zero.
    Accepts a :class:`CoveragePlan` or its serialized dictionary, so
    simulation can run from an emitted plan file alone.
    """
    doc = plan.to_json_dict() if isinstance(plan, CoveragePlan) else plan
    if cfg is None:
        cfg = PlannerConfig.from_dict(doc["config"])
    workloads_by_cluster = {}
    for sub in doc["subgraphs"]:
        if not sub["tours"]:
            raise ConfigError(f"sub-graph {sub['cluster']} has no tours")
        workloads_by_cluster[int(sub["cluster"])] = [
            float(w) for w in sub["workloads"]
        ]
    team_times = []
    transit_times = []
    coverage_times = []
    events = []
    for team in doc["trob_routes"]["teams"]:
        clock = 0.0
        transit = 0.0
        coverage = 0.0
        index = int(team["team"])
        for cluster, leg in zip(team["clusters"], team["leg_lengths"]):
            hop = float(leg) / cfg.trob_speed
            events.append(
                {"type": "transit", "team": index, "cluster": int(cluster),
                 "start_s": clock, "end_s": clock + hop}
            )
            clock += hop
            transit += hop
            if int(cluster) not in workloads_by_cluster:
                raise ConfigError(f"route visits cluster {cluster} with no tour plan")
            stay = max(workloads_by_cluster[int(cluster)]) / cfg.crob_speed
            events.append(
                {"type": "coverage", "team": index, "cluster": int(cluster),
                 "start_s": clock, "end_s": clock + stay}
            )
            clock += stay
            coverage += stay
        team_times.append(clock)
        transit_times.append(transit)
        coverage_times.append(coverage)
    return SimulationResult(
        team_times=team_times,
        overall=max(team_times),
        transit_times=transit_times,
        coverage_times=coverage_times,
        events=events,
    )


def simulate_homogeneous(plan: HomogeneousPlan, cfg: PlannerConfig) -> float:
    """Completion time of the single-depot fleet: slowest robot's workload."""
    return plan.max_workload / cfg.crob_speed


# -- comparison harness --------------------------------------------------------------


def planner_pairs(names) -> list[tuple[str, str]]:
    pairs = []
    for name in names:
        try:
            part, tour = name.split("+")
        except ValueError:
            raise ConfigError(
                f"planner {name!r} must look like '<partitioner>+<tour planner>'"
            ) from None
        if part not in PARTITIONERS or tour not in TOUR_PLANNERS:
            raise ConfigError(
                f"unknown planner {name!r}; partitioners {PARTITIONERS}, "
                f"tour planners {TOUR_PLANNERS}"
            )
        pairs.append((part, tour))
    return pairs


def compare_report(
    graph: RoadGraph,
    cfg: PlannerConfig,
    planners,
    seeds,
    k: int | None = None,
) -> list[dict]:
    """One row per (planner, seed): runtime, lengths, balance, and utilization.

    Partitions are computed once per partitioner and reused across its tour
    planners.  A planner failure lands in the row's ``error`` column rather
    than aborting the sweep.
    """
    pairs = planner_pairs(planners)
    if not pairs:
        raise ConfigError("at least one planner is required")
    rows = []
    for seed in seeds:
        run_cfg = cfg.replace(seed=int(seed))
        partitions = {}
        for part_name, tour_name in pairs:
            name = f"{part_name}+{tour_name}"
            try:
                if part_name not in partitions:
                    if part_name == "bgp":
                        partitions[part_name] = partition_graph(graph, run_cfg, k=k)
                    else:
                        count = (
                            k if k is not None
                            else compute_cluster_count(graph.total_length, run_cfg)
                        )
                        partitions[part_name] = kmedoids_baseline(
                            graph, count, seed=int(seed), cfg=run_cfg
                        )
                partition = partitions[part_name]
                tic = time.perf_counter()
                subgraph_rows = []
                for cluster in range(1, partition.k + 1):
                    sub = plan_subgraph(
                        graph,
                        partition.edges_of(cluster),
                        partition.centroids[cluster],
                        run_cfg,
                        cluster=cluster,
                        method=tour_name,
                    )
                    lengths = [t.length for t in sub.tours]
                    subgraph_rows.append(
                        {
                            "cluster": cluster,
                            "n_tours": len(sub.tours),
                            "total_length": float(sum(lengths)),
                            "max_length": float(max(lengths)),
                            "rsd": rsd(lengths) if len(lengths) > 1 else 0.0,
                            "utilization": utilization(sub.workloads),
                            "fallback_used": sub.fallback_used,
                        }
                    )
                runtime = time.perf_counter() - tic
                rows.append(
                    {
                        "planner": name,
                        "seed": int(seed),
                        "n_subgraphs": partition.k,
                        "runtime_s": runtime,
                        "total_tour_length": float(
                            sum(s["total_length"] for s in subgraph_rows)
                        ),
                        "mean_max_tour_length": float(
                            sum(s["max_length"] for s in subgraph_rows)
                            / len(subgraph_rows)
                        ),
                        "mean_rsd": float(
                            sum(s["rsd"] for s in subgraph_rows) / len(subgraph_rows)
                        ),
                        "mean_utilization": float(
                            sum(s["utilization"] for s in subgraph_rows)
                            / len(subgraph_rows)
                        ),
                        "error": None,
                        "subgraphs": subgraph_rows,
                    }
                )
            except LineCoverError as exc:
                rows.append(
                    {
                        "planner": name,
                        "seed": int(seed),
                        "n_subgraphs": None,
                        "runtime_s": None,
                        "total_tour_length": None,
                        "mean_max_tour_length": None,
                        "mean_rsd": None,
                        "mean_utilization": None,
                        "error": str(exc),
                        "subgraphs": [],
                    }
                )
    return rows


def report_to_csv(rows) -> str:
    lines = [",".join(REPORT_COLUMNS)]
    for row in rows:
        cells = []
        for col in REPORT_COLUMNS:
            value = row.get(col)
            if value is None:
                cells.append("")
            elif isinstance(value, float):
                cells.append(f"{value:.6f}")
            elif isinstance(value, str):
                escaped = value.replace('"', '""')
                cells.append(f'"{escaped}"' if "," in value or '"' in value else escaped)
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def report_to_json(rows) -> dict:
    return {"columns": list(REPORT_COLUMNS), "rows": rows}
