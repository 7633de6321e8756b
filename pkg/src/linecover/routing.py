"""Transport-robot routing: order sub-graph centroids per team.

The assignment-and-ordering problem is a multiple traveling salesman
instance solved with a genetic algorithm over a two-part chromosome: a
permutation of the centroids plus the per-team segment sizes.  Routes are
open walks that start at a shared depot and end at the team's last
centroid; legs are shortest-path distances in the road network.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .graph import RoadGraph

OBJECTIVES = ("total", "max")


@dataclass(frozen=True)
class GAParams:
    population: int = 100
    generations: int = 500
    elitism: int = 2
    mutation_rate: float = 0.05
    tournament: int = 3
    break_inherit_rate: float = 0.5

    def __post_init__(self):
        if self.population < 2 or self.generations < 1:
            raise ConfigError("population must be >= 2 and generations >= 1")
        if not 0 <= self.elitism < self.population:
            raise ConfigError("elitism must be smaller than the population")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise ConfigError("mutation rate must lie in [0, 1]")
        if self.tournament < 1:
            raise ConfigError("tournament size must be at least 1")


@dataclass
class TrobRoutes:
    """Per-team visit orders over cluster indices (1-based) with leg lengths."""

    depot: int
    routes: list[list[int]]
    route_lengths: list[float]
    leg_lengths: list[list[float]]
    objective: str
    best_fitness: float
    fitness_history: list[float]

    @property
    def teams(self) -> int:
        return len(self.routes)

    @property
    def total_length(self) -> float:
        return float(sum(self.route_lengths))

    def to_json_dict(self) -> dict:
        return {
            "depot": self.depot,
            "objective": self.objective,
            "teams": [
                {
                    "team": t,
                    "clusters": list(self.routes[t]),
                    "leg_lengths": [float(x) for x in self.leg_lengths[t]],
                    "length": float(self.route_lengths[t]),
                }
                for t in range(self.teams)
            ],
        }


def route_trobs(
    graph: RoadGraph,
    centroids,
    teams: int,
    depot: int,
    ga: GAParams | None = None,
    seed: int = 0,
    objective: str = "total",
    balanced_teams: bool = True,
) -> TrobRoutes:
    """Split centroids across teams and order each team's visits.

    Fitness is the summed route length over all teams (``objective="total"``,
    the default) or the longest single route (``objective="max"``).  Every
    team visits at least one centroid; with ``balanced_teams`` (the default)
    team sizes differ by at most one, since sub-graphs are length-balanced
    and a lopsided split would serialize most of the coverage work onto one
    team.  Results are deterministic under ``seed``.
    """
    centroids = [int(c) for c in centroids]
    if not centroids:
        raise ConfigError("at least one centroid is required")
    if teams < 1:
        raise ConfigError("teams must be at least 1")
    if teams > len(centroids):
        raise ConfigError(
            f"{teams} teams cannot each visit one of only {len(centroids)} centroids"
        )
    if objective not in OBJECTIVES:
        raise ConfigError(f"objective must be one of {OBJECTIVES}")
    ga = ga if ga is not None else GAParams()

    k = len(centroids)
    points = [int(depot)] + centroids
    rows = graph.distance_matrix(points, cache=True)
    cols = np.array([graph.vertex_index(p) for p in points])
    dist = rows[:, cols]  # index 0 = depot, 1..k = centroid order

    def fitness(perm: tuple[int, ...], breaks: tuple[int, ...]) -> float:
        total = 0.0
        worst = 0.0
        at = 0
        for size in breaks:
            leg_sum = dist[0, perm[at] + 1]
            for i in range(at, at + size - 1):
                leg_sum += dist[perm[i] + 1, perm[i + 1] + 1]
            at += size
            total += leg_sum
            if leg_sum > worst:
                worst = leg_sum
        return worst if objective == "max" else total

    rng = random.Random(int(seed))

    def random_breaks() -> tuple[int, ...]:
        if teams == 1:
            return (k,)
        if balanced_teams:
            base, extra = divmod(k, teams)
            sizes = [base] * teams
            for slot in rng.sample(range(teams), extra):
                sizes[slot] += 1
            return tuple(sizes)
        cuts = sorted(rng.sample(range(1, k), teams - 1))
        sizes = [cuts[0]] + [b - a for a, b in zip(cuts, cuts[1:])] + [k - cuts[-1]]
        return tuple(sizes)

    population = []
    base = list(range(k))
    for _ in range(ga.population):
        perm = base[:]
        rng.shuffle(perm)
        population.append((tuple(perm), random_breaks()))

    scored = sorted(
        ((fitness(p, b), p, b) for p, b in population), key=lambda s: s[0]
    )
    best = scored[0]
    history = [best[0]]

    for _ in range(ga.generations):
        next_pop = [(p, b) for _, p, b in scored[: ga.elitism]]
        while len(next_pop) < ga.population:
            parent_a = _tournament(rng, scored, ga.tournament)
            parent_b = _tournament(rng, scored, ga.tournament)
            child_perm = _order_crossover(rng, parent_a[1], parent_b[1])
            # Good team splits must be able to survive: inherit them half of
            # the time, re-sample uniformly otherwise.
            if rng.random() < ga.break_inherit_rate:
                child_breaks = parent_a[2]
            else:
                child_breaks = random_breaks()
            if rng.random() < ga.mutation_rate:
                child_perm = _swap_mutation(rng, child_perm)
            if rng.random() < ga.mutation_rate:
                child_perm = _inversion_mutation(rng, child_perm)
            next_pop.append((child_perm, child_breaks))
        scored = sorted(
            ((fitness(p, b), p, b) for p, b in next_pop), key=lambda s: s[0]
        )
        if scored[0][0] < best[0]:
            best = scored[0]
        history.append(best[0])

    _, perm, breaks = best
    routes: list[list[int]] = []
    leg_lengths: list[list[float]] = []
    route_lengths: list[float] = []
    at = 0
    for size in breaks:
        chunk = [perm[i] for i in range(at, at + size)]
        at += size
        legs = [float(dist[0, chunk[0] + 1])]
        for a, b in zip(chunk, chunk[1:]):
            legs.append(float(dist[a + 1, b + 1]))
        routes.append([c + 1 for c in chunk])  # cluster indices are 1-based
        leg_lengths.append(legs)
        route_lengths.append(float(sum(legs)))
    return TrobRoutes(
        depot=int(depot),
        routes=routes,
        route_lengths=route_lengths,
        leg_lengths=leg_lengths,
        objective=objective,
        best_fitness=float(best[0]),
        fitness_history=[float(f) for f in history],
    )


def _tournament(rng, scored, size):
    picks = [scored[rng.randrange(len(scored))] for _ in range(size)]
    return min(picks, key=lambda s: s[0])


def _order_crossover(rng, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    k = len(a)
    if k == 1:
        return a
    i, j = sorted(rng.sample(range(k), 2))
    window = a[i : j + 1]
    taken = set(window)
    rest = [gene for gene in b if gene not in taken]
    child = rest[:i] + list(window) + rest[i:]
    return tuple(child)


def _swap_mutation(rng, perm: tuple[int, ...]) -> tuple[int, ...]:
    k = len(perm)
    if k < 2:
        return perm
    i, j = rng.sample(range(k), 2)
    mutated = list(perm)
    mutated[i], mutated[j] = mutated[j], mutated[i]
    return tuple(mutated)


def _inversion_mutation(rng, perm: tuple[int, ...]) -> tuple[int, ...]:
    k = len(perm)
    if k < 2:
        return perm
    i, j = sorted(rng.sample(range(k), 2))
    mutated = list(perm)
    mutated[i : j + 1] = reversed(mutated[i : j + 1])
    return tuple(mutated)
