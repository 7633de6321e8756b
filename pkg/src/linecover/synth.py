"""Synthetic road-network generator for tests and benchmarks.

Produces jittered grid graphs with optional random edge removal.  Removal
never disconnects the network: dropped edges are restored in generation
order until the graph is a single component again.  Everything is a pure
function of the parameters and seed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConfigError
from .graph import RoadGraph, _UnionFind


def generate_synthetic_network(
    rows: int,
    cols: int,
    jitter: float = 0.0,
    drop_probability: float = 0.0,
    seed: int = 0,
    spacing: float = 1.0,
) -> RoadGraph:
    """Deterministic grid-like planar network.

    ``jitter`` perturbs vertex coordinates by a uniform fraction of the grid
    ``spacing`` (meters per cell); ``drop_probability`` removes edges at
    random subject to the connectivity guarantee.
    """
    if rows < 2 or cols < 2:
        raise ConfigError("rows and cols must both be at least 2")
    if not 0.0 <= jitter:
        raise ConfigError("jitter must be non-negative")
    if not 0.0 <= drop_probability < 1.0:
        raise ConfigError("drop probability must be in [0, 1)")
    if not spacing > 0.0:
        raise ConfigError("spacing must be positive")

    rng = np.random.default_rng(int(seed))
    n = rows * cols
    offsets = rng.uniform(-jitter, jitter, size=(n, 2)) * spacing
    if jitter == 0.0:
        offsets[:] = 0.0

    vertices = []
    for r in range(rows):
        for c in range(cols):
            vid = r * cols + c
            x = c * spacing + offsets[vid, 0]
            y = r * spacing + offsets[vid, 1]
            vertices.append((vid, float(x), float(y)))

    candidate_edges = []
    for r in range(rows):
        for c in range(cols):
            vid = r * cols + c
            if c + 1 < cols:
                candidate_edges.append((vid, vid + 1))
            if r + 1 < rows:
                candidate_edges.append((vid, vid + cols))

    drops = rng.random(len(candidate_edges)) < drop_probability
    kept = [not d for d in drops]

    uf = _UnionFind(n)
    for (u, v), keep in zip(candidate_edges, kept):
        if keep:
            uf.union(u, v)
    for i, (u, v) in enumerate(candidate_edges):
        if not kept[i] and uf.find(u) != uf.find(v):
            kept[i] = True
            uf.union(u, v)

    coords = {vid: (x, y) for vid, x, y in vertices}
    edges = []
    for (u, v), keep in zip(candidate_edges, kept):
        if keep:
            (ux, uy), (vx, vy) = coords[u], coords[v]
            edges.append((len(edges), u, v, math.hypot(vx - ux, vy - uy)))
    return RoadGraph(vertices, edges)
