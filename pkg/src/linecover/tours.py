"""Energy-feasible coverage tours for one sub-graph.

Planning proceeds in four steps: duplicate shortest paths between
odd-degree vertices so the required edges admit an Euler circuit, extract
the circuit from the depot, enumerate every circuit segment that fits the
energy budget as a tour candidate (a DAG over circuit positions), and pick
segments either by an unconstrained shortest path through that DAG or by a
dynamic program pinned to an exact tour count inside an iteratively
shrinking length window.  A longest-processing-time pass then spreads the
tours over the robots of a team.

Tour lengths count the deadhead approach from the depot, the circuit
segment (including any interior deadheads), and the deadhead return.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, EnergyInfeasibleError, PlanningError
from .graph import RoadGraph, connected_edge_components

REQUIRED = "required"
DEADHEAD = "deadhead"

_EXACT_MATCH_LIMIT = 10
_TWO_SWAP_PASSES = 20


@dataclass(frozen=True)
class Leg:
    """One directed edge traversal; ``forward`` is relative to stored endpoints."""

    edge: int
    forward: bool
    kind: str


@dataclass
class EulerMultigraph:
    """Required edges plus deadhead duplicates with all vertex degrees even."""

    graph: RoadGraph
    instances: list[tuple[int, str]]
    odd_vertices: list[int]
    matching_weight: float
    matched_pairs: list[tuple[int, int]]

    @property
    def total_length(self) -> float:
        return float(sum(self.graph.edge_length(e) for e, _ in self.instances))


@dataclass
class EulerCircuit:
    """Closed walk from the depot traversing every multigraph edge once."""

    depot: int
    legs: list[Leg]
    vertex_path: list[int]
    prefix: np.ndarray

    @property
    def r(self) -> int:
        return len(self.legs)

    @property
    def length(self) -> float:
        return float(self.prefix[-1])


@dataclass
class TourGraph:
    """DAG of candidate tours over circuit positions.

    An arc ``(a, b)`` with ``a < b`` stands for the tour that deadheads from
    the depot to position ``a``, follows the circuit to ``b``, and deadheads
    back; it exists when that total length fits the energy budget.  Arc
    lengths decompose as ``A[a] + B[b]`` with ``A = depot_out - prefix`` and
    ``B = prefix + depot_back``, which keeps enumeration and filtering
    linear in the number of feasible arcs.
    """

    graph: RoadGraph
    circuit: EulerCircuit
    energy: float
    depot_out: np.ndarray
    depot_back: np.ndarray
    _master: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def r(self) -> int:
        return self.circuit.r

    @property
    def start_costs(self) -> np.ndarray:
        return self.depot_out - self.circuit.prefix

    @property
    def end_costs(self) -> np.ndarray:
        return self.circuit.prefix + self.depot_back

    def arc_length(self, a: int, b: int) -> float:
        if not 0 <= a < b <= self.r:
            raise ConfigError(f"arc ({a}, {b}) out of range for r={self.r}")
        return float(self.start_costs[a] + self.end_costs[b])

    def arcs(self, low: float = 0.0, high: float | None = None) -> list[tuple[int, int, float]]:
        """Materialized arc list ``(a, b, length)``; intended for small graphs."""
        high = self.energy if high is None else high
        srcs, dsts, lens, _ = self._arc_arrays(low, high)
        return [(int(a), int(b), float(w)) for a, b, w in zip(srcs, dsts, lens)]

    def arc_count(self) -> int:
        return len(self._master_arrays()[0])

    def _master_arrays(self):
        if self._master is None:
            A = self.start_costs
            B = self.end_costs
            r = self.r
            # A is non-increasing and B non-decreasing up to float noise, so
            # the feasible sources per target form a (near) suffix of [0, b).
            A_floor = np.minimum.accumulate(A)
            keys = self.energy - B
            astar = np.searchsorted(-A_floor, -keys, side="left")
            idx = np.arange(r + 1)
            counts = np.maximum(0, idx - astar)
            dsts = np.repeat(idx, counts)
            range_start = idx - counts
            offsets = np.cumsum(counts) - counts
            srcs = np.repeat(range_start, counts) + (
                np.arange(counts.sum()) - np.repeat(offsets, counts)
            )
            lens = A[srcs] + B[dsts]
            keep = lens <= self.energy
            srcs, dsts, lens = srcs[keep], dsts[keep], lens[keep]
            starts = np.searchsorted(dsts, np.arange(r + 2))
            self._master = (srcs, dsts, lens, starts)
        return self._master

    def _arc_arrays(self, low: float, high: float):
        srcs, dsts, lens, starts = self._master_arrays()
        if low <= 0.0 and high >= self.energy:
            return srcs, dsts, lens, starts
        keep = (lens >= low) & (lens <= high)
        srcs, dsts, lens = srcs[keep], dsts[keep], lens[keep]
        starts = np.searchsorted(dsts, np.arange(self.r + 2))
        return srcs, dsts, lens, starts


@dataclass(frozen=True)
class Tour:
    """Depot-anchored walk: deadhead approach, circuit segment, deadhead return."""

    depot: int
    arc: tuple[int, int]
    legs: tuple[Leg, ...]
    length: float
    covered: tuple[int, ...]


@dataclass
class BalancedTourPlan:
    tours: list[Tour]
    tour_count: int
    fallback_used: bool
    windows: list[tuple[float, float]]
    iterations: int


# -- eulerization ---------------------------------------------------------------


def eulerize(graph: RoadGraph, required_edges, depot: int) -> EulerMultigraph:
    """Duplicate min-cost shortest paths between odd-degree vertices.

    Odd vertices of the required multigraph are paired by a perfect
    matching weighted with shortest-path distances in the full graph;
    each matched pair contributes its path edges as deadhead copies, after
    which every degree is even.
    """
    required = sorted({int(e) for e in required_edges})
    if not required:
        raise PlanningError("no required edges to eulerize")
    components = connected_edge_components(graph, required)
    if len(components) != 1:
        raise PlanningError(
            f"required edges split into {len(components)} components; expected one"
        )
    degree: dict[int, int] = {}
    incident = set()
    for e in required:
        u, v = graph.edge_endpoints(e)
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
        incident.update((u, v))
    depot = int(depot)
    if depot not in incident:
        raise PlanningError(f"depot vertex {depot} is not incident to a required edge")

    odd = sorted(v for v, d in degree.items() if d % 2 == 1)
    instances: list[tuple[int, str]] = [(e, REQUIRED) for e in required]
    matching_weight = 0.0
    matched_pairs: list[tuple[int, int]] = []
    if odd:
        rows = graph.distance_matrix(odd, cache=False)
        cols = np.array([graph.vertex_index(v) for v in odd])
        dist = rows[:, cols]
        if len(odd) <= _EXACT_MATCH_LIMIT:
            pair_idx, matching_weight = _match_exact(dist)
        else:
            pair_idx, matching_weight = _match_greedy(dist)
        for i, j in pair_idx:
            u, v = odd[i], odd[j]
            matched_pairs.append((u, v))
            path = graph.shortest_path(u, v)
            for x, y in zip(path, path[1:]):
                instances.append((graph.min_edge_between(x, y), DEADHEAD))
    return EulerMultigraph(
        graph=graph,
        instances=instances,
        odd_vertices=odd,
        matching_weight=float(matching_weight),
        matched_pairs=matched_pairs,
    )


def _match_exact(dist: np.ndarray) -> tuple[list[tuple[int, int]], float]:
    """Minimum-weight perfect matching by subset dynamic programming."""
    n = dist.shape[0]
    full = (1 << n) - 1
    cost = np.full(1 << n, np.inf)
    cost[0] = 0.0
    take: dict[int, tuple[int, int]] = {}
    for mask in range(1 << n):
        if not np.isfinite(cost[mask]) or mask == full:
            continue
        i = next(b for b in range(n) if not mask & (1 << b))
        for j in range(i + 1, n):
            if mask & (1 << j):
                continue
            new = mask | (1 << i) | (1 << j)
            value = cost[mask] + dist[i, j]
            if value < cost[new]:
                cost[new] = value
                take[new] = (i, j)
    pairs = []
    mask = full
    while mask:
        i, j = take[mask]
        pairs.append((i, j))
        mask &= ~(1 << i) & ~(1 << j)
    pairs.reverse()
    return pairs, float(cost[full])


def _match_greedy(dist: np.ndarray) -> tuple[list[tuple[int, int]], float]:
    """Nearest-pair greedy matching improved by pairwise two-swaps."""
    n = dist.shape[0]
    order = sorted(
        ((float(dist[i, j]), i, j) for i in range(n) for j in range(i + 1, n))
    )
    used = [False] * n
    pairs: list[tuple[int, int]] = []
    for _, i, j in order:
        if not used[i] and not used[j]:
            used[i] = used[j] = True
            pairs.append((i, j))
    for _ in range(_TWO_SWAP_PASSES):
        improved = False
        for p in range(len(pairs)):
            for q in range(p + 1, len(pairs)):
                a, b = pairs[p]
                c, d = pairs[q]
                base = dist[a, b] + dist[c, d]
                if dist[a, c] + dist[b, d] < base:
                    pairs[p], pairs[q] = (a, c), (b, d)
                    improved = True
                elif dist[a, d] + dist[b, c] < base:
                    pairs[p], pairs[q] = (a, d), (b, c)
                    improved = True
        if not improved:
            break
    pairs = [tuple(sorted(p)) for p in pairs]
    pairs.sort()
    weight = float(sum(dist[i, j] for i, j in pairs))
    return pairs, weight


# -- euler circuit ----------------------------------------------------------------


def euler_circuit(multigraph: EulerMultigraph, depot: int) -> EulerCircuit:
    """Hierholzer traversal from the depot, smallest edge id first."""
    graph = multigraph.graph
    depot_pos = graph.vertex_index(depot)

    adjacency: dict[int, list[tuple[tuple[int, int], int, int]]] = {}
    endpoints = []
    for inst, (edge_id, _) in enumerate(multigraph.instances):
        u, v = graph.edge_endpoints(edge_id)
        up, vp = graph.vertex_index(u), graph.vertex_index(v)
        endpoints.append((up, vp))
        adjacency.setdefault(up, []).append(((edge_id, inst), inst, vp))
        adjacency.setdefault(vp, []).append(((edge_id, inst), inst, up))
    for entries in adjacency.values():
        entries.sort()
    for vertex, entries in adjacency.items():
        if len(entries) % 2 == 1:
            raise PlanningError(
                f"vertex {graph.vertex_id_at(vertex)} has odd degree; "
                "the multigraph is not Eulerian"
            )
    if depot_pos not in adjacency:
        raise PlanningError(f"depot vertex {depot} has no incident multigraph edge")

    used = [False] * len(multigraph.instances)
    pointer = {v: 0 for v in adjacency}
    stack: list[tuple[int, int]] = [(depot_pos, -1)]
    trail: list[tuple[int, int]] = []
    while stack:
        vertex, via = stack[-1]
        entries = adjacency[vertex]
        i = pointer[vertex]
        while i < len(entries) and used[entries[i][1]]:
            i += 1
        pointer[vertex] = i
        if i < len(entries):
            _, inst, other = entries[i]
            used[inst] = True
            stack.append((other, inst))
        else:
            trail.append(stack.pop())
    trail.reverse()
    if any(not u for u in used):
        raise PlanningError("multigraph is not connected; circuit left edges behind")

    vertex_path = [graph.vertex_id_at(trail[0][0])]
    legs: list[Leg] = []
    lengths = [0.0]
    for vertex, via in trail[1:]:
        edge_id, kind = multigraph.instances[via]
        u, _ = graph.edge_endpoints(edge_id)
        frm = vertex_path[-1]
        legs.append(Leg(edge=edge_id, forward=(u == frm), kind=kind))
        vertex_path.append(graph.vertex_id_at(vertex))
        lengths.append(lengths[-1] + graph.edge_length(edge_id))
    if vertex_path[0] != int(depot) or vertex_path[-1] != int(depot):
        raise PlanningError("circuit does not start and end at the depot")
    return EulerCircuit(
        depot=int(depot),
        legs=legs,
        vertex_path=vertex_path,
        prefix=np.array(lengths, dtype=np.float64),
    )


# -- tour graph --------------------------------------------------------------------


def build_tour_graph(circuit: EulerCircuit, graph: RoadGraph, energy: float) -> TourGraph:
    """Candidate tour DAG; fails when a circuit step fits in no tour."""
    if not energy > 0.0:
        raise ConfigError("energy must be positive")
    row = graph.distance_row(circuit.depot)
    positions = np.array([graph.vertex_index(v) for v in circuit.vertex_path])
    depot_out = row[positions].astype(np.float64)
    depot_back = depot_out.copy()  # undirected graph: symmetric distances
    tg = TourGraph(
        graph=graph,
        circuit=circuit,
        energy=float(energy),
        depot_out=depot_out,
        depot_back=depot_back,
    )
    A = tg.start_costs
    B = tg.end_costs
    best_in = np.minimum.accumulate(A)
    best_out = np.minimum.accumulate(B[::-1])[::-1]
    tightest = best_in[:-1] + best_out[1:]
    violations = np.flatnonzero(tightest > energy)
    if len(violations):
        step = int(violations[0])
        leg = circuit.legs[step]
        raise EnergyInfeasibleError(
            f"edge {leg.edge} cannot be covered within the energy budget "
            f"{energy}: its cheapest enclosing tour needs {tightest[step]:.3f}"
        )
    return tg


# -- dynamic programs ---------------------------------------------------------------


def min_hops(tg: TourGraph) -> int:
    """Fewest arcs on any path from position 0 to r."""
    A = tg.start_costs
    B = tg.end_costs
    r = tg.r
    hops = np.full(r + 1, np.inf)
    hops[0] = 0.0
    for v in range(1, r + 1):
        feasible = A[:v] + B[v] <= tg.energy
        if feasible.any():
            best = hops[:v][feasible].min()
            hops[v] = best + 1.0
    if not np.isfinite(hops[r]):
        raise EnergyInfeasibleError("no energy-feasible tour chain reaches the circuit end")
    return int(hops[r])


def compute_tour_count(tg: TourGraph, crobs: int) -> int:
    """Smallest multiple of the team size covering the minimum tour count."""
    if crobs < 1:
        raise ConfigError("crobs must be at least 1")
    needed = min_hops(tg)
    return -(-needed // crobs) * crobs


def dp_exact_arcs(
    tg: TourGraph, tour_count: int, window: tuple[float, float] | None = None
) -> tuple[bool, list[int] | None, float]:
    """Minimum-length 0-to-r path using exactly ``tour_count`` arcs.

    Returns ``(feasible, positions, total_length)`` where ``positions`` has
    ``tour_count + 1`` entries starting at 0 and ending at r.  Ties prefer
    the smallest predecessor position at every step.
    """
    t = int(tour_count)
    if t < 1:
        raise ConfigError("tour count must be at least 1")
    low, high = window if window is not None else (0.0, tg.energy)
    srcs, dsts, lens, starts = tg._arc_arrays(low, high)
    r = tg.r
    if t > r or len(srcs) == 0:
        return False, None, math.inf

    group = np.flatnonzero(starts[1:] > starts[:-1])
    group_starts = starts[group]
    sentinel = r + 2

    dp = np.full(r + 1, np.inf)
    dp[0] = 0.0
    preds = np.full((t + 1, r + 1), -1, dtype=np.int64)
    for n in range(1, t + 1):
        cand = dp[srcs] + lens
        level = np.full(r + 1, np.inf)
        level[group] = np.minimum.reduceat(cand, group_starts)
        tied = np.where(cand == level[dsts], srcs, sentinel)
        best_pred = np.full(r + 1, sentinel, dtype=np.int64)
        best_pred[group] = np.minimum.reduceat(tied, group_starts)
        finite = np.isfinite(level)
        preds[n][finite] = best_pred[finite]
        dp = level
    if not np.isfinite(dp[r]):
        return False, None, math.inf

    positions = [r]
    for n in range(t, 0, -1):
        positions.append(int(preds[n][positions[-1]]))
    positions.reverse()
    if positions[0] != 0:
        raise PlanningError("dynamic program backtrack did not reach the start")
    return True, positions, float(dp[r])


# -- tour selection ------------------------------------------------------------------


def materialize_tour(tg: TourGraph, a: int, b: int) -> Tour:
    """Expand arc ``(a, b)`` into an explicit depot-to-depot walk."""
    graph = tg.graph
    circuit = tg.circuit
    legs: list[Leg] = []
    legs.extend(_deadhead_legs(graph, circuit.depot, circuit.vertex_path[a]))
    legs.extend(circuit.legs[a:b])
    legs.extend(_deadhead_legs(graph, circuit.vertex_path[b], circuit.depot))
    covered = tuple(leg.edge for leg in circuit.legs[a:b] if leg.kind == REQUIRED)
    return Tour(
        depot=circuit.depot,
        arc=(int(a), int(b)),
        legs=tuple(legs),
        length=tg.arc_length(a, b),
        covered=covered,
    )


def _deadhead_legs(graph: RoadGraph, source: int, target: int) -> list[Leg]:
    if source == target:
        return []
    path = graph.shortest_path(source, target)
    legs = []
    for x, y in zip(path, path[1:]):
        edge_id = graph.min_edge_between(x, y)
        u, _ = graph.edge_endpoints(edge_id)
        legs.append(Leg(edge=edge_id, forward=(u == x), kind=DEADHEAD))
    return legs


def _tours_from_positions(tg: TourGraph, positions: list[int]) -> list[Tour]:
    return [materialize_tour(tg, a, b) for a, b in zip(positions, positions[1:])]


def up_baseline(tg: TourGraph) -> list[Tour]:
    """Unconstrained-count shortest chain of feasible tours through the DAG."""
    A = tg.start_costs
    B = tg.end_costs
    r = tg.r
    dp = np.full(r + 1, np.inf)
    dp[0] = 0.0
    pred = np.full(r + 1, -1, dtype=np.int64)
    for v in range(1, r + 1):
        cand = dp[:v] + A[:v] + B[v]
        cand[A[:v] + B[v] > tg.energy] = np.inf
        j = int(np.argmin(cand))
        if np.isfinite(cand[j]):
            dp[v] = cand[j]
            pred[v] = j
    if not np.isfinite(dp[r]):
        raise EnergyInfeasibleError("no feasible tour chain covers the circuit")
    positions = [r]
    while positions[-1] != 0:
        positions.append(int(pred[positions[-1]]))
    positions.reverse()
    return _tours_from_positions(tg, positions)


def balanced_tours(tg: TourGraph, crobs: int, beta: float) -> BalancedTourPlan:
    """Equal-count tours with lengths squeezed toward each other.

    Starts from the smallest team-aligned tour count; when that count is
    infeasible it grows by the team size (a rare fallback).  Each accepted
    solution narrows the admissible arc-length window to
    ``[shortest tour, beta * longest tour]`` until the dynamic program
    fails, and the last feasible solution wins.
    """
    if not 0.0 < beta < 1.0:
        raise ConfigError("beta must lie in (0, 1)")
    t = compute_tour_count(tg, crobs)
    fallback = False
    feasible, positions, _ = dp_exact_arcs(tg, t)
    while not feasible:
        fallback = True
        t += crobs
        if t > tg.r:
            raise EnergyInfeasibleError(
                f"no tour count that is a multiple of {crobs} is feasible"
            )
        feasible, positions, _ = dp_exact_arcs(tg, t)

    windows = [(0.0, tg.energy)]
    tours = _tours_from_positions(tg, positions)
    iterations = 1
    while True:
        lengths = [tour.length for tour in tours]
        low = min(lengths)
        high = beta * max(lengths)
        ok, positions, _ = dp_exact_arcs(tg, t, (low, high))
        if not ok:
            break
        tours = _tours_from_positions(tg, positions)
        windows.append((low, high))
        iterations += 1
    return BalancedTourPlan(
        tours=tours,
        tour_count=t,
        fallback_used=fallback,
        windows=windows,
        iterations=iterations,
    )


# -- robot assignment ----------------------------------------------------------------


def assign_tours_lpt(tours, crobs: int) -> list[list[int]]:
    """Longest-processing-time greedy assignment of tours to robots.

    Tours are taken in descending length (ties by index) and each goes to
    the robot with the least accumulated workload, ties to the smaller
    robot index.  Returns tour indices per robot.
    """
    if crobs < 1:
        raise ConfigError("crobs must be at least 1")
    lengths = [float(t.length) if isinstance(t, Tour) else float(t) for t in tours]
    order = sorted(range(len(lengths)), key=lambda i: (-lengths[i], i))
    loads = [0.0] * crobs
    buckets: list[list[int]] = [[] for _ in range(crobs)]
    for i in order:
        robot = min(range(crobs), key=lambda rr: (loads[rr], rr))
        buckets[robot].append(i)
        loads[robot] += lengths[i]
    return buckets
