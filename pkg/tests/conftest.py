"""Shared fixtures and independent brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import math
import random

import numpy as np
import pytest

from linecover.graph import RoadGraph


# -- small builders -----------------------------------------------------------------


def path_graph(lengths, coords=None):
    """Chain 0-1-2-... with the given edge lengths."""
    n = len(lengths) + 1
    if coords is None:
        xs = [0.0]
        for w in lengths:
            xs.append(xs[-1] + w)
        coords = [(x, 0.0) for x in xs]
    vertices = [(i, coords[i][0], coords[i][1]) for i in range(n)]
    edges = [(i, i, i + 1, float(w)) for i, w in enumerate(lengths)]
    return RoadGraph(vertices, edges)


def cycle_graph(lengths):
    n = len(lengths)
    vertices = [
        (i, math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i in range(n)
    ]
    edges = [(i, i, (i + 1) % n, float(w)) for i, w in enumerate(lengths)]
    return RoadGraph(vertices, edges)


def barbell_graph():
    """Two unit triangles joined by a unit bridge: vertices 0-2 and 3-5."""
    vertices = [
        (0, 0.0, 1.0), (1, -1.0, 0.0), (2, 0.0, 0.0),
        (3, 1.0, 0.0), (4, 2.0, 0.0), (5, 1.0, 1.0),
    ]
    edges = [
        (0, 0, 1, 1.0), (1, 1, 2, 1.0), (2, 0, 2, 1.0),
        (3, 2, 3, 1.0),
        (4, 3, 4, 1.0), (5, 4, 5, 1.0), (6, 3, 5, 1.0),
    ]
    return RoadGraph(vertices, edges)


def random_connected_graph(n, extra_edges, seed, max_len=10.0):
    """Random spanning tree plus random extra edges; lengths in (0, max_len]."""
    rng = random.Random(seed)
    vertices = [(i, rng.uniform(0, 100), rng.uniform(0, 100)) for i in range(n)]
    edges = []
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        edges.append((len(edges), u, v, rng.uniform(0.5, max_len)))
    for _ in range(extra_edges):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u != v:
            edges.append((len(edges), u, v, rng.uniform(0.5, max_len)))
    return RoadGraph(vertices, edges)


# -- oracles ------------------------------------------------------------------------


def floyd_warshall(graph: RoadGraph) -> np.ndarray:
    """All-pairs shortest paths by the cubic recurrence; indexes follow vertex order."""
    n = graph.n_vertices
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for eid, u, v, w in graph.edges():
        ui, vi = graph.vertex_index(u), graph.vertex_index(v)
        dist[ui, vi] = min(dist[ui, vi], w)
        dist[vi, ui] = min(dist[vi, ui], w)
    for k in range(n):
        dist = np.minimum(dist, dist[:, k][:, None] + dist[k, :][None, :])
    return dist


def union_find_components(graph: RoadGraph, edge_ids):
    """Edge components via repeated whole-set scans (no path compression tricks)."""
    remaining = sorted(edge_ids)
    components = []
    while remaining:
        seed_edge = remaining.pop(0)
        members = {seed_edge}
        vertices = set(graph.edge_endpoints(seed_edge))
        changed = True
        while changed:
            changed = False
            for e in remaining[:]:
                u, v = graph.edge_endpoints(e)
                if u in vertices or v in vertices:
                    members.add(e)
                    vertices.update((u, v))
                    remaining.remove(e)
                    changed = True
        components.append(sorted(members))
    return components


def exhaustive_medoid(graph: RoadGraph, vertex_ids):
    dist = floyd_warshall(graph)
    ids = sorted(set(vertex_ids))
    best = None
    for v in ids:
        vi = graph.vertex_index(v)
        total = sum(dist[vi, graph.vertex_index(u)] for u in ids)
        if best is None or total < best[0] - 1e-12:
            best = (total, v)
    return best[1]


def exhaustive_matching(dist: np.ndarray) -> float:
    """Minimum pairing weight by enumerating all perfect pairings."""
    n = dist.shape[0]

    def rec(remaining: tuple) -> float:
        if not remaining:
            return 0.0
        first = remaining[0]
        rest = remaining[1:]
        best = math.inf
        for i, partner in enumerate(rest):
            sub = rest[:i] + rest[i + 1:]
            best = min(best, dist[first, partner] + rec(sub))
        return best

    return rec(tuple(range(n)))


def enumerate_exact_paths(arcs, r, t):
    """All 0->r paths with exactly t arcs; returns (best_length, best_path)."""
    outgoing = {}
    for a, b, w in arcs:
        outgoing.setdefault(a, []).append((b, w))
    best = (math.inf, None)

    def rec(position, hops, length, trail):
        nonlocal best
        if hops == t:
            if position == r and length < best[0] - 1e-12:
                best = (length, trail[:])
            return
        for nxt, w in outgoing.get(position, []):
            trail.append(nxt)
            rec(nxt, hops + 1, length + w, trail)
            trail.pop()

    rec(0, 0, 0.0, [0])
    return best


def brute_force_makespan(lengths, machines):
    best = math.inf
    for assignment in itertools.product(range(machines), repeat=len(lengths)):
        loads = [0.0] * machines
        for job, machine in zip(lengths, assignment):
            loads[machine] += job
        best = min(best, max(loads))
    return best


@pytest.fixture
def tiny_triangle():
    vertices = [(0, 0.0, 0.0), (1, 1.0, 0.0), (2, 0.0, 1.0)]
    edges = [(0, 0, 1, 1.0), (1, 1, 2, 1.5), (2, 0, 2, 1.0)]
    return RoadGraph(vertices, edges)
