"""Transport-robot routing: GA behaviour against exhaustive enumeration."""

from __future__ import annotations

import itertools

import pytest

from conftest import path_graph, random_connected_graph
from linecover.errors import ConfigError
from linecover.routing import GAParams, route_trobs

FAST_GA = GAParams(population=40, generations=120)


def exhaustive_total(graph, centroids, teams, depot):
    """Best total route length over all orderings and contiguous team splits."""
    k = len(centroids)
    d = lambda a, b: graph.distance_row(a)[graph.vertex_index(b)]
    best = None
    for perm in itertools.permutations(centroids):
        for cuts in itertools.combinations(range(1, k), teams - 1):
            bounds = (0, *cuts, k)
            total = 0.0
            for a, b in zip(bounds, bounds[1:]):
                chunk = perm[a:b]
                total += d(depot, chunk[0])
                total += sum(d(x, y) for x, y in zip(chunk, chunk[1:]))
            if best is None or total < best:
                best = total
    return best


class TestRouteTrobs:
    def test_single_centroid_single_team(self):
        g = path_graph([2.0, 3.0])
        routes = route_trobs(g, [2], teams=1, depot=0, ga=FAST_GA, seed=1)
        assert routes.routes == [[1]]
        assert routes.route_lengths[0] == pytest.approx(5.0)

    def test_collinear_centroids_visited_in_order(self):
        g = path_graph([1.0] * 6)
        # centroids at 2, 4, 6 with depot at 0: the only optimal order walks
        # outward, total 6; any other order backtracks.
        routes = route_trobs(g, [4, 6, 2], teams=1, depot=0, ga=FAST_GA, seed=0)
        assert routes.routes[0] == [3, 1, 2]  # clusters holding vertices 2, 4, 6
        assert routes.total_length == pytest.approx(6.0)
        assert routes.total_length == pytest.approx(
            exhaustive_total(g, [4, 6, 2], 1, 0)
        )

    def test_too_many_teams(self):
        g = path_graph([1.0, 1.0])
        with pytest.raises(ConfigError, match="teams"):
            route_trobs(g, [1, 2], teams=3, depot=0)

    def test_every_cluster_in_exactly_one_route(self):
        g = random_connected_graph(40, 50, seed=14)
        centroids = g.vertex_ids()[::6][:7]
        routes = route_trobs(g, centroids, teams=3, depot=0, ga=FAST_GA, seed=5)
        flat = [c for r in routes.routes for c in r]
        assert sorted(flat) == list(range(1, len(centroids) + 1))
        assert all(len(r) >= 1 for r in routes.routes)

    def test_route_lengths_match_legs(self):
        g = random_connected_graph(30, 40, seed=3)
        centroids = g.vertex_ids()[2:14:2]
        routes = route_trobs(g, centroids, teams=2, depot=1, ga=FAST_GA, seed=9)
        for legs, total in zip(routes.leg_lengths, routes.route_lengths):
            assert sum(legs) == pytest.approx(total)

    def test_monotone_best_fitness(self):
        g = random_connected_graph(35, 45, seed=6)
        centroids = g.vertex_ids()[::5][:8]
        routes = route_trobs(g, centroids, teams=2, depot=0, ga=FAST_GA, seed=11)
        history = routes.fitness_history
        assert all(b <= a + 1e-12 for a, b in zip(history, history[1:]))
        assert routes.best_fitness == pytest.approx(history[-1])

    def test_determinism_under_seed(self):
        g = random_connected_graph(30, 35, seed=2)
        centroids = g.vertex_ids()[::4][:6]
        a = route_trobs(g, centroids, teams=2, depot=0, ga=FAST_GA, seed=21)
        b = route_trobs(g, centroids, teams=2, depot=0, ga=FAST_GA, seed=21)
        assert a.routes == b.routes
        assert a.total_length == b.total_length

    def test_near_optimal_on_small_instances(self):
        misses = 0
        for seed in range(20):
            g = random_connected_graph(25, 30, seed=200 + seed)
            centroids = g.vertex_ids()[1:17:2]  # 8 centroids
            routes = route_trobs(
                g, centroids, teams=2, depot=0, seed=seed, balanced_teams=False
            )
            optimum = exhaustive_total(g, centroids, 2, 0)
            assert routes.total_length >= optimum - 1e-9
            if routes.total_length > optimum * 1.05:
                misses += 1
        assert misses == 0

    def test_balanced_teams_sizes_differ_by_at_most_one(self):
        g = random_connected_graph(40, 50, seed=14)
        centroids = g.vertex_ids()[::4][:9]
        routes = route_trobs(g, centroids, teams=2, depot=0, ga=FAST_GA, seed=2)
        sizes = sorted(len(r) for r in routes.routes)
        assert sizes == [4, 5]

    def test_max_objective_supported(self):
        g = random_connected_graph(30, 40, seed=4)
        centroids = g.vertex_ids()[::5][:6]
        total = route_trobs(g, centroids, teams=2, depot=0, ga=FAST_GA, seed=3)
        worst = route_trobs(
            g, centroids, teams=2, depot=0, ga=FAST_GA, seed=3, objective="max"
        )
        assert max(worst.route_lengths) <= max(total.route_lengths) + 1e-9
