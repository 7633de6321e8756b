"""Command-line surface: artifacts, manifests, determinism, exit codes."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from linecover.cli import main
from linecover.io import load_graph


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _gen(workdir, name="net.graph", rows=8, cols=8, spacing=60.0, seed=4) -> Path:
    path = workdir / name
    code = main([
        "gen", "--rows", str(rows), "--cols", str(cols), "--jitter", "0.2",
        "--drop", "0.1", "--spacing", str(spacing), "--seed", str(seed),
        "--out", str(path),
    ])
    assert code == 0
    return path


DESK_FLAGS = ["--energy", "900", "--crobs", "3"]


class TestGen:
    def test_writes_graph_and_manifest(self, workdir):
        path = _gen(workdir)
        graph = load_graph(path)
        assert graph.n_vertices == 64
        manifest = json.loads((workdir / "gen_manifest.json").read_text())
        assert manifest["command"] == "gen"
        assert str(path) in manifest["outputs"]

    def test_deterministic_bytes(self, workdir):
        a = _gen(workdir, "a.graph").read_bytes()
        b = _gen(workdir, "b.graph").read_bytes()
        assert a == b


class TestPartition:
    def test_emits_json_svg_manifest(self, workdir):
        graph = _gen(workdir)
        code = main(["partition", str(graph), "--k", "3", *DESK_FLAGS,
                     "--out", str(workdir / "run")])
        assert code == 0
        doc = json.loads((workdir / "run" / "partition.json").read_text())
        assert doc["k"] == 3
        assert len(doc["clusters"]) == 3
        svg = (workdir / "run" / "partition.svg").read_text()
        assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
        manifest = json.loads((workdir / "run" / "partition_manifest.json").read_text())
        assert manifest["config"]["energy"] == 900.0

    def test_k_override_contract(self, workdir):
        graph = _gen(workdir)
        for k in (2, 4):
            code = main(["partition", str(graph), "--k", str(k), *DESK_FLAGS,
                         "--out", str(workdir / f"k{k}")])
            assert code == 0
            doc = json.loads((workdir / f"k{k}" / "partition.json").read_text())
            assert doc["k"] == k

    def test_default_config_small_network_single_cluster(self, workdir):
        # ~20 km total: one team covers it without splitting
        graph = _gen(workdir, rows=20, cols=20, spacing=26.0, seed=1)
        out = workdir / "single"
        assert main(["partition", str(graph), "--out", str(out)]) == 0
        doc = json.loads((out / "partition.json").read_text())
        assert doc["k"] == 1

    def test_missing_file_exit_one(self, workdir):
        assert main(["partition", "absent.graph"]) == 1

    def test_invalid_graph_exit_one(self, workdir):
        bad = workdir / "bad.graph"
        bad.write_text("v 0 0 0\nv 1 1 0\n0 7\n")
        assert main(["partition", str(bad)]) == 1

    def test_byte_identical_across_runs(self, workdir):
        graph = _gen(workdir)
        blobs = []
        for i in range(2):
            out = workdir / f"rep{i}"
            assert main(["partition", str(graph), "--k", "3", *DESK_FLAGS,
                         "--out", str(out)]) == 0
            blobs.append((out / "partition.json").read_bytes()
                         + (out / "partition.svg").read_bytes())
        assert blobs[0] == blobs[1]


class TestPlan:
    def test_plan_and_simulate(self, workdir):
        graph = _gen(workdir)
        out = workdir / "run"
        code = main(["plan", str(graph), "--k", "3", "--teams", "2",
                     *DESK_FLAGS, "--out", str(out)])
        assert code == 0
        doc = json.loads((out / "plan.json").read_text())
        assert doc["teams"] == 2
        assert len(doc["subgraphs"]) == 3
        assert (out / "plan.svg").exists()

        code = main(["simulate", str(out / "plan.json"), "--out", str(out)])
        assert code == 0
        timing = json.loads((out / "timing.json").read_text())
        assert timing["overall_s"] > 0
        assert len(timing["teams"]) == 2

    def test_replan_on_emitted_partition_is_idempotent(self, workdir):
        graph = _gen(workdir)
        first = workdir / "first"
        assert main(["plan", str(graph), "--k", "3", *DESK_FLAGS,
                     "--out", str(first)]) == 0
        second = workdir / "second"
        assert main(["plan", str(graph), "--partition",
                     str(first / "plan.json"), *DESK_FLAGS,
                     "--out", str(second)]) == 1  # plan.json is not a partition
        assert main(["partition", str(graph), "--k", "3", *DESK_FLAGS,
                     "--out", str(first)]) == 0
        assert main(["plan", str(graph), "--partition",
                     str(first / "partition.json"), *DESK_FLAGS,
                     "--out", str(second)]) == 0
        a = json.loads((first / "plan.json").read_text())
        b = json.loads((second / "plan.json").read_text())
        assert a["subgraphs"] == b["subgraphs"]

    def test_tiny_cycle_single_tour(self, workdir):
        path = workdir / "cycle.graph"
        path.write_text(
            "v 0 0 0\nv 1 1 0\nv 2 1 1\nv 3 0 1\n0 1\n1 2\n2 3\n3 0\n"
        )
        out = workdir / "cycle"
        assert main(["plan", str(path), "--crobs", "1", "--out", str(out)]) == 0
        doc = json.loads((out / "plan.json").read_text())
        tours = doc["subgraphs"][0]["tours"]
        assert len(tours) == 1
        assert tours[0]["length"] == pytest.approx(4.0)

    def test_energy_infeasible_exit_two(self, workdir):
        graph = _gen(workdir)
        code = main(["plan", str(graph), "--k", "2", "--energy", "150",
                     "--out", str(workdir / "x")])
        assert code == 2

    def test_emitted_tours_respect_energy_budget(self, workdir):
        graph = _gen(workdir, rows=32, cols=32, spacing=60.0, seed=9)  # ~2k edges
        out = workdir / "audit"
        assert main(["plan", str(graph), "--energy", "2500", "--crobs", "3",
                     "--out", str(out)]) == 0
        doc = json.loads((out / "plan.json").read_text())
        budget = doc["config"]["energy"]
        tours = [t for sub in doc["subgraphs"] for t in sub["tours"]]
        assert tours
        assert all(t["length"] <= budget + 1e-6 for t in tours)


class TestCompare:
    def test_generated_networks(self, workdir):
        out = workdir / "cmp"
        code = main(["compare", "--gen", "6x6,j=0.2,d=0.1,s=60",
                     "--planners", "bgp+bup,kmedoids+up", "--seeds", "1,2",
                     *DESK_FLAGS, "--k", "2", "--out", str(out)])
        assert code == 0
        csv_lines = (out / "compare.csv").read_text().splitlines()
        assert len(csv_lines) == 5  # header + 2 planners x 2 seeds
        doc = json.loads((out / "compare.json").read_text())
        assert len(doc["rows"]) == 4
        assert all("runtime_s" not in row for row in doc["rows"])

    def test_compare_json_deterministic(self, workdir, monkeypatch):
        out_a, out_b = workdir / "a", workdir / "b"
        argv = ["compare", "--gen", "5x5,j=0.1,d=0.1,s=60",
                "--planners", "bgp+bup", "--seeds", "3", *DESK_FLAGS,
                "--k", "2"]
        assert main([*argv, "--out", str(out_a)]) == 0
        monkeypatch.setenv("LINECOVER_THREADS", "2")
        assert main([*argv, "--out", str(out_b)]) == 0
        assert (out_a / "compare.json").read_bytes() == (
            out_b / "compare.json"
        ).read_bytes()

    def test_unknown_planner_exit_one(self, workdir):
        code = main(["compare", "--gen", "4x4", "--planners", "foo+bar",
                     "--out", str(workdir / "x")])
        assert code == 1

    def test_needs_graph_or_spec(self, workdir):
        assert main(["compare", "--out", str(workdir / "x")]) == 1


class TestConfigPrecedence:
    def test_file_then_flags(self, workdir):
        graph = _gen(workdir)
        cfg_file = workdir / "cfg.json"
        cfg_file.write_text(json.dumps({"energy": 900.0, "crobs_per_team": 3,
                                        "alpha": 0.4}))
        out = workdir / "run"
        assert main(["partition", str(graph), "--config", str(cfg_file),
                     "--alpha", "0.5", "--k", "2", "--out", str(out)]) == 0
        manifest = json.loads((out / "partition_manifest.json").read_text())
        assert manifest["config"]["alpha"] == 0.5       # flag wins
        assert manifest["config"]["energy"] == 900.0    # file wins over default
        assert manifest["config"]["beta"] == 0.98       # default

    def test_unknown_config_field_rejected(self, workdir):
        graph = _gen(workdir)
        cfg_file = workdir / "cfg.json"
        cfg_file.write_text(json.dumps({"mystery": 1}))
        assert main(["partition", str(graph), "--config", str(cfg_file)]) == 1
