"""RSD, utilization, the execution-time simulation, and the comparison harness."""

from __future__ import annotations

import math

import pytest

from linecover.config import PlannerConfig
from linecover.errors import ConfigError
from linecover.metrics import (
    compare_report,
    report_to_csv,
    report_to_json,
    rsd,
    simulate,
    simulate_homogeneous,
    utilization,
)
from linecover.planner import plan_coverage, plan_homogeneous
from linecover.synth import generate_synthetic_network

DESK = PlannerConfig(energy=900.0, crobs_per_team=3)


class TestRsd:
    def test_equal_values_zero(self):
        assert rsd([3.0, 3.0, 3.0]) == 0.0

    def test_direct_evaluation(self):
        # mean 2, population variance 2/3
        assert rsd([1.0, 2.0, 3.0]) == pytest.approx(
            100.0 * math.sqrt(2.0 / 3.0) / 2.0, abs=1e-9
        )
        assert rsd([1.0, 2.0, 3.0]) == pytest.approx(40.82, abs=0.01)

    def test_scale_invariance(self):
        values = [2.0, 5.0, 11.0, 3.0]
        assert rsd(values) == pytest.approx(rsd([7.5 * v for v in values]))

    def test_empty_rejected(self):
        with pytest.raises(ConfigError):
            rsd([])


class TestUtilization:
    def test_equal_workloads(self):
        assert utilization([4.0, 4.0, 4.0]) == pytest.approx(1.0)

    def test_direct_evaluation(self):
        assert utilization([1.0, 2.0, 3.0]) == pytest.approx(2.0 / 3.0)

    def test_idle_robot(self):
        assert utilization([0.0, 4.0]) == pytest.approx(0.5)

    def test_all_zero_rejected(self):
        with pytest.raises(ConfigError):
            utilization([0.0, 0.0])

    def test_unity_iff_equal(self):
        assert utilization([5.0, 5.0]) == 1.0
        assert utilization([5.0, 4.0]) < 1.0


def _plan_doc(teams=1, leg=0.0, workloads=((3600.0,),)):
    """Hand-built plan document: one cluster per route position."""
    cfg = PlannerConfig().to_dict()
    subgraphs = []
    routes = []
    cluster = 1
    for t in range(teams):
        clusters = []
        legs = []
        for w in workloads[t]:
            subgraphs.append(
                {
                    "cluster": cluster,
                    "workloads": [w],
                    "tours": [{"robot": 0, "length": w}],
                }
            )
            clusters.append(cluster)
            legs.append(leg)
            cluster += 1
        routes.append({"team": t, "clusters": clusters, "leg_lengths": legs})
    return {"config": cfg, "subgraphs": subgraphs, "trob_routes": {"teams": routes}}


class TestSimulate:
    def test_single_robot_arithmetic(self):
        doc = _plan_doc(teams=1, leg=0.0, workloads=((3600.0,),))
        result = simulate(doc)
        assert result.overall == pytest.approx(1800.0)  # 3600 m at 2 m/s

    def test_two_identical_teams(self):
        doc = _plan_doc(teams=2, leg=120.0, workloads=((500.0,), (500.0,)))
        result = simulate(doc)
        assert result.team_times[0] == pytest.approx(result.team_times[1])
        assert result.overall == pytest.approx(result.team_times[0])

    def test_hand_timeline(self):
        # team 0: leg 240 m at 12 m/s = 20 s, coverage 500/2 = 250 s, then
        # leg 120 m = 10 s, coverage 300/2 = 150 s -> 430 s total.
        doc = _plan_doc(teams=1, leg=0.0, workloads=((500.0, 300.0),))
        doc["trob_routes"]["teams"][0]["leg_lengths"] = [240.0, 120.0]
        result = simulate(doc)
        assert result.transit_times[0] == pytest.approx(30.0)
        assert result.coverage_times[0] == pytest.approx(400.0)
        assert result.overall == pytest.approx(430.0)
        assert [e["type"] for e in result.events] == [
            "transit", "coverage", "transit", "coverage",
        ]
        assert result.events[-1]["end_s"] == pytest.approx(430.0)

    def test_workload_speed_tradeoff(self):
        doc_a = _plan_doc(teams=1, workloads=((1000.0,),))
        slow = PlannerConfig(crob_speed=1.0)
        doc_b = _plan_doc(teams=1, workloads=((2000.0,),))
        assert simulate(doc_b, slow).overall == pytest.approx(
            simulate(doc_a, slow).overall * 2.0
        )
        # doubling workloads and doubling speed cancels out
        fast = PlannerConfig(crob_speed=2.0)
        assert simulate(doc_b, fast).overall == pytest.approx(
            simulate(doc_a, slow).overall
        )

    def test_missing_tours_rejected(self):
        doc = _plan_doc()
        doc["subgraphs"][0]["tours"] = []
        with pytest.raises(ConfigError, match="no tours"):
            simulate(doc)

    def test_full_pipeline_plan_roundtrip(self):
        g = generate_synthetic_network(8, 8, 0.2, 0.1, seed=3, spacing=60.0)
        plan = plan_coverage(g, DESK, teams=2, k=4)
        direct = simulate(plan)
        from_doc = simulate(plan.to_json_dict())
        assert direct.overall == pytest.approx(from_doc.overall)
        assert len(direct.team_times) == 2

    def test_homogeneous_baseline(self):
        g = generate_synthetic_network(6, 6, 0.2, 0.1, seed=5, spacing=60.0)
        plan = plan_homogeneous(g, crobs=4, cfg=PlannerConfig(energy=2000.0))
        assert len(plan.workloads) == 4
        overall = simulate_homogeneous(plan, PlannerConfig())
        assert overall == pytest.approx(plan.max_workload / 2.0)


class TestCompareReport:
    def test_single_planner_single_seed(self):
        g = generate_synthetic_network(6, 6, 0.2, 0.1, seed=2, spacing=60.0)
        rows = compare_report(g, DESK, ["bgp+bup"], [0], k=2)
        assert len(rows) == 1
        row = rows[0]
        assert row["planner"] == "bgp+bup"
        assert row["error"] is None
        assert row["n_subgraphs"] == 2

    def test_totals_equal_subgraph_sums(self):
        g = generate_synthetic_network(7, 7, 0.2, 0.1, seed=4, spacing=60.0)
        rows = compare_report(g, DESK, ["bgp+bup", "bgp+up"], [0, 1], k=3)
        assert len(rows) == 4
        for row in rows:
            subtotal = sum(s["total_length"] for s in row["subgraphs"])
            assert row["total_tour_length"] == pytest.approx(subtotal)
            mean_max = sum(s["max_length"] for s in row["subgraphs"]) / len(
                row["subgraphs"]
            )
            assert row["mean_max_tour_length"] == pytest.approx(mean_max)

    def test_unknown_planner_rejected(self):
        g = generate_synthetic_network(4, 4, 0.0, 0.0, seed=0)
        with pytest.raises(ConfigError, match="unknown planner"):
            compare_report(g, DESK, ["mystery+bup"], [0])

    def test_failure_is_a_row_not_an_exception(self):
        g = generate_synthetic_network(6, 6, 0.2, 0.1, seed=2, spacing=60.0)
        tiny_energy = PlannerConfig(energy=30.0, crobs_per_team=3)
        rows = compare_report(g, tiny_energy, ["bgp+bup"], [0], k=2)
        assert len(rows) == 1
        assert rows[0]["error"] is not None

    def test_csv_and_json_emission(self):
        g = generate_synthetic_network(6, 6, 0.2, 0.1, seed=2, spacing=60.0)
        rows = compare_report(g, DESK, ["bgp+bup"], [0], k=2)
        csv_text = report_to_csv(rows)
        header = csv_text.splitlines()[0].split(",")
        assert header[:8] == [
            "planner", "seed", "n_subgraphs", "runtime_s", "total_tour_length",
            "mean_max_tour_length", "mean_rsd", "mean_utilization",
        ]
        doc = report_to_json(rows)
        assert doc["rows"][0]["planner"] == "bgp+bup"
