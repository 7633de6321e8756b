"""Command-line interface: gen, partition, plan, simulate, compare.

Every command writes its artifacts plus a run manifest holding the input
path, the full configuration snapshot, the seed, the emitted files, and
per-stage wall-clock timings.  Artifacts are canonical JSON (floats pinned
to six decimals) and are byte-stable across re-runs; manifests and the
compare CSV contain measured runtimes and are the one documented
exception.  ``LINECOVER_THREADS`` caps the worker pool of ``compare``.

Exit codes: 0 success, 1 validation or usage error, 2 energy infeasibility,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .config import PlannerConfig
from .errors import (
    ConfigError,
    EnergyInfeasibleError,
    GraphValidationError,
    LineCoverError,
    ParseError,
    PlanningError,
)
from .io import (
    GRAPH_FORMATS,
    canonical_json,
    load_graph,
    save_graph,
    write_canonical_json,
)
from .metrics import compare_report, report_to_csv, simulate
from .partition import Partition, partition_graph, kmedoids_baseline, compute_cluster_count
from .planner import PARTITIONERS, TOUR_PLANNERS, plan_coverage
from .svg import render_partition_svg, render_plan_svg
from .synth import generate_synthetic_network

_CONFIG_FLAGS = {
    "alpha": "alpha",
    "crobs": "crobs_per_team",
    "energy": "energy",
    "epsilon": "ratio_threshold",
    "tau1": "max_cluster_loops",
    "tau2": "max_boundary_loops",
    "eta1": "eta1",
    "eta2": "eta2",
    "beta": "beta",
    "crob_speed": "crob_speed",
    "trob_speed": "trob_speed",
    "seed": "seed",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON file with configuration fields")
    parser.add_argument("--alpha", type=float, default=None,
                        help="sub-graph scale fraction in (0,1)")
    parser.add_argument("--crobs", type=int, default=None,
                        help="coverage robots per team")
    parser.add_argument("--energy", type=float, default=None,
                        help="per-tour energy budget in meters")
    parser.add_argument("--epsilon", type=float, default=None,
                        help="target max/min cluster length ratio")
    parser.add_argument("--tau1", type=int, default=None,
                        help="clustering iteration cap")
    parser.add_argument("--tau2", type=int, default=None,
                        help="boundary re-assignment sweep cap")
    parser.add_argument("--eta1", type=float, default=None,
                        help="linear scale-factor gain")
    parser.add_argument("--eta2", type=float, default=None,
                        help="cubic scale-factor gain")
    parser.add_argument("--beta", type=float, default=None,
                        help="tour-length window shrink factor in (0,1)")
    parser.add_argument("--crob-speed", dest="crob_speed", type=float, default=None,
                        help="coverage robot speed in m/s")
    parser.add_argument("--trob-speed", dest="trob_speed", type=float, default=None,
                        help="transport robot speed in m/s")
    parser.add_argument("--seed", type=int, default=None, help="random seed")


def _resolve_config(args) -> PlannerConfig:
    values = PlannerConfig().to_dict()
    if args.config is not None:
        import json

        try:
            file_values = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from None
        unknown = set(file_values) - set(values)
        if unknown:
            raise ConfigError(f"unknown config fields in {args.config}: {sorted(unknown)}")
        values.update(file_values)
    for flag, field in _CONFIG_FLAGS.items():
        flag_value = getattr(args, flag, None)
        if flag_value is not None:
            values[field] = flag_value
    return PlannerConfig.from_dict(values)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linecover",
                     description="Balanced multi-robot line coverage planning")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a synthetic road network")
    p_gen.add_argument("--rows", type=int, required=True)
    p_gen.add_argument("--cols", type=int, required=True)
    p_gen.add_argument("--jitter", type=float, default=0.0)
    p_gen.add_argument("--drop", type=float, default=0.0)
    p_gen.add_argument("--spacing", type=float, default=1.0,
                       help="grid cell size in meters")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--format", choices=GRAPH_FORMATS, default="edge-list")
    p_gen.add_argument("--out", type=Path, default=Path("network.graph"))

    p_part = sub.add_parser("partition", help="split a network into balanced sub-graphs")
    p_part.add_argument("graph", type=Path)
    p_part.add_argument("--format", choices=GRAPH_FORMATS, default="edge-list")
    p_part.add_argument("--k", type=int, default=None,
                        help="override the computed sub-graph count")
    p_part.add_argument("--partitioner", choices=PARTITIONERS, default="bgp")
    p_part.add_argument("--out", type=Path, default=Path("."))
    _add_config_flags(p_part)

    p_plan = sub.add_parser("plan", help="plan coverage tours for all sub-graphs")
    p_plan.add_argument("graph", type=Path)
    p_plan.add_argument("--format", choices=GRAPH_FORMATS, default="edge-list")
    p_plan.add_argument("--partition", type=Path, default=None,
                        help="re-use an emitted partition JSON")
    p_plan.add_argument("--k", type=int, default=None)
    p_plan.add_argument("--teams", type=int, default=1)
    p_plan.add_argument("--depot", type=int, default=None,
                        help="transport depot vertex id (default: graph medoid)")
    p_plan.add_argument("--partitioner", choices=PARTITIONERS, default="bgp")
    p_plan.add_argument("--tour-planner", dest="tour_planner",
                        choices=TOUR_PLANNERS, default="bup")
    p_plan.add_argument("--out", type=Path, default=Path("."))
    _add_config_flags(p_plan)

    p_sim = sub.add_parser("simulate", help="compute the execution timeline of a plan")
    p_sim.add_argument("plan", type=Path)
    p_sim.add_argument("--out", type=Path, default=Path("."))
    _add_config_flags(p_sim)

    p_cmp = sub.add_parser("compare", help="benchmark planner combinations")
    p_cmp.add_argument("graph", type=Path, nargs="?", default=None)
    p_cmp.add_argument("--format", choices=GRAPH_FORMATS, default="edge-list")
    p_cmp.add_argument("--gen", type=str, default=None, metavar="ROWSxCOLS,j=J,d=D[,s=S]",
                       help="generate one network per seed instead of reading a file")
    p_cmp.add_argument("--planners", type=str, default="bgp+bup,bgp+up",
                       help="comma list of <partitioner>+<tour planner>")
    p_cmp.add_argument("--seeds", type=str, default="0",
                       help="comma list of seeds")
    p_cmp.add_argument("--k", type=int, default=None)
    p_cmp.add_argument("--out", type=Path, default=Path("."))
    _add_config_flags(p_cmp)
    return parser


# -- commands -------------------------------------------------------------------


def _cmd_gen(args) -> tuple[list[str], dict]:
    tic = time.perf_counter()
    graph = generate_synthetic_network(
        args.rows, args.cols, args.jitter, args.drop,
        seed=args.seed, spacing=args.spacing,
    )
    args.out.parent.mkdir(parents=True, exist_ok=True)
    save_graph(graph, args.out, args.format)
    timings = {"generate_s": time.perf_counter() - tic}
    return [str(args.out)], timings


def _cmd_partition(args) -> tuple[list[str], dict]:
    cfg = _resolve_config(args)
    timings = {}
    tic = time.perf_counter()
    graph = load_graph(args.graph, args.format)
    timings["load_s"] = time.perf_counter() - tic

    tic = time.perf_counter()
    if args.partitioner == "bgp":
        partition = partition_graph(graph, cfg, k=args.k)
    else:
        count = args.k if args.k is not None else compute_cluster_count(
            graph.total_length, cfg)
        partition = kmedoids_baseline(graph, count, seed=cfg.seed, cfg=cfg)
    timings["partition_s"] = time.perf_counter() - tic

    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "partition.json"
    svg_path = out_dir / "partition.svg"
    tic = time.perf_counter()
    write_canonical_json(partition.to_json_dict(), json_path)
    svg_path.write_text(render_partition_svg(graph, partition), encoding="utf-8")
    timings["emit_s"] = time.perf_counter() - tic
    print(f"k={partition.k} ratio={partition.ratio():.4f} -> {json_path}")
    return [str(json_path), str(svg_path)], timings


def _cmd_plan(args) -> tuple[list[str], dict]:
    cfg = _resolve_config(args)
    timings = {}
    tic = time.perf_counter()
    graph = load_graph(args.graph, args.format)
    partition = None
    if args.partition is not None:
        import json

        doc = json.loads(Path(args.partition).read_text(encoding="utf-8"))
        partition = Partition.from_json_dict(doc)
    timings["load_s"] = time.perf_counter() - tic

    tic = time.perf_counter()
    plan = plan_coverage(
        graph, cfg,
        teams=args.teams,
        depot=args.depot,
        k=args.k,
        partitioner=args.partitioner,
        tour_planner=args.tour_planner,
        partition=partition,
    )
    timings["plan_s"] = time.perf_counter() - tic
    timings.update(plan.timings)

    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "plan.json"
    svg_path = out_dir / "plan.svg"
    tic = time.perf_counter()
    write_canonical_json(plan.to_json_dict(), json_path)
    svg_path.write_text(render_plan_svg(graph, plan), encoding="utf-8")
    timings["emit_s"] = time.perf_counter() - tic
    total = sum(s.total_tour_length for s in plan.subgraphs)
    print(f"k={plan.partition.k} teams={plan.teams} "
          f"total_tour_length={total:.1f} -> {json_path}")
    return [str(json_path), str(svg_path)], timings


def _cmd_simulate(args) -> tuple[list[str], dict]:
    import json

    timings = {}
    tic = time.perf_counter()
    doc = json.loads(Path(args.plan).read_text(encoding="utf-8"))
    cfg = _resolve_config(args) if _any_config_flag(args) else None
    result = simulate(doc, cfg)
    timings["simulate_s"] = time.perf_counter() - tic

    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    json_path = out_dir / "timing.json"
    write_canonical_json(result.to_json_dict(), json_path)
    print(f"overall={result.overall:.1f}s -> {json_path}")
    return [str(json_path)], timings


def _any_config_flag(args) -> bool:
    if args.config is not None:
        return True
    return any(getattr(args, flag, None) is not None for flag in _CONFIG_FLAGS)


def _cmd_compare(args) -> tuple[list[str], dict]:
    cfg = _resolve_config(args)
    planners = [p.strip() for p in args.planners.split(",") if p.strip()]
    seeds = [int(s) for s in args.seeds.split(",") if s.strip()]
    if not seeds:
        raise ConfigError("at least one seed is required")
    timings = {}

    tic = time.perf_counter()
    if args.gen is not None:
        spec = _parse_gen_spec(args.gen)

        def _cell(seed: int):
            net = generate_synthetic_network(
                spec["rows"], spec["cols"], spec["jitter"], spec["drop"],
                seed=seed, spacing=spec["spacing"],
            )
            return compare_report(net, cfg, planners, [seed], k=args.k)

        rows = _fan_out(_cell, seeds)
    elif args.graph is not None:
        graph = load_graph(args.graph, args.format)

        def _cell(seed: int):
            return compare_report(graph, cfg, planners, [seed], k=args.k)

        rows = _fan_out(_cell, seeds)
    else:
        raise ConfigError("compare needs a graph file or a --gen specification")
    rows.sort(key=lambda r: (r["seed"], r["planner"]))
    timings["compare_s"] = time.perf_counter() - tic

    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "compare.csv"
    json_path = out_dir / "compare.json"
    csv_path.write_text(report_to_csv(rows), encoding="utf-8")
    # Measured runtimes stay out of the canonical JSON so its bytes are
    # reproducible; they live in the CSV and the manifest.
    stable_rows = []
    for row in rows:
        stable = {key: value for key, value in row.items() if key != "runtime_s"}
        stable_rows.append(stable)
    write_canonical_json({"rows": stable_rows}, json_path)
    print(f"{len(rows)} rows -> {csv_path}")
    return [str(csv_path), str(json_path)], timings


def _fan_out(cell, seeds):
    threads = int(os.environ.get("LINECOVER_THREADS", "1") or "1")
    rows = []
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for chunk in pool.map(cell, seeds):
                rows.extend(chunk)
    else:
        for seed in seeds:
            rows.extend(cell(seed))
    return rows


def _parse_gen_spec(text: str) -> dict:
    spec = {"jitter": 0.0, "drop": 0.0, "spacing": 1.0}
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts or "x" not in parts[0]:
        raise ConfigError(
            f"bad --gen value {text!r}; expected ROWSxCOLS[,j=J][,d=D][,s=S]"
        )
    rows, _, cols = parts[0].partition("x")
    try:
        spec["rows"] = int(rows)
        spec["cols"] = int(cols)
        for part in parts[1:]:
            key, _, value = part.partition("=")
            if key == "j":
                spec["jitter"] = float(value)
            elif key == "d":
                spec["drop"] = float(value)
            elif key == "s":
                spec["spacing"] = float(value)
            else:
                raise ValueError(f"unknown key {key!r}")
    except ValueError as exc:
        raise ConfigError(f"bad --gen value {text!r}: {exc}") from None
    return spec


# -- entry point -------------------------------------------------------------------


_COMMANDS = {
    "gen": _cmd_gen,
    "partition": _cmd_partition,
    "plan": _cmd_plan,
    "simulate": _cmd_simulate,
    "compare": _cmd_compare,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        outputs, timings = _COMMANDS[args.command](args)
    except (ParseError, GraphValidationError, ConfigError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EnergyInfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (PlanningError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except LineCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    timings["total_s"] = time.perf_counter() - started
    _write_manifest(args, outputs, timings)
    return 0


def _write_manifest(args, outputs, timings) -> None:
    out_dir = args.out if args.out.is_dir() else args.out.parent
    manifest_path = out_dir / f"{args.command}_manifest.json"
    try:
        cfg = _resolve_config(args) if hasattr(args, "alpha") else PlannerConfig()
    except ConfigError:
        cfg = PlannerConfig()
    options = {}
    for key in ("graph", "plan", "partition", "k", "teams", "depot", "format",
                "partitioner", "tour_planner", "planners", "seeds", "gen",
                "rows", "cols", "jitter", "drop", "spacing"):
        if hasattr(args, key):
            value = getattr(args, key)
            options[key] = str(value) if isinstance(value, Path) else value
    seed = args.seed if args.command == "gen" else cfg.seed
    manifest = {
        "command": args.command,
        "options": options,
        "config": cfg.to_dict(),
        "seed": seed,
        "outputs": outputs,
        "timings_s": {k: float(v) for k, v in timings.items()},
    }
    manifest_path.write_text(canonical_json(manifest), encoding="utf-8")


if __name__ == "__main__":
    raise SystemExit(main())
