"""Planner configuration shared across partitioning, tour planning, and simulation."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields

from .errors import ConfigError


@dataclass(frozen=True)
class PlannerConfig:
    """All tunables of the coverage pipeline.

    Lengths are meters, speeds meters per second.  ``alpha`` scales the
    per-team coverable length when sizing the partition, ``energy`` is the
    driving budget of one coverage robot per tour, and ``beta`` controls how
    aggressively the tour-length window shrinks while balancing tours.
    """

    alpha: float = 0.59
    crobs_per_team: int = 5
    energy: float = 25_000.0
    ratio_threshold: float = 1.05
    max_cluster_loops: int = 1000
    max_boundary_loops: int = 100
    eta1: float = 0.02
    eta2: float = 0.1
    beta: float = 0.98
    crob_speed: float = 2.0
    trob_speed: float = 12.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.crobs_per_team < 1:
            raise ConfigError("crobs_per_team must be at least 1")
        if not self.energy > 0.0:
            raise ConfigError("energy must be positive")
        if not self.ratio_threshold >= 1.0:
            raise ConfigError("ratio_threshold must be at least 1")
        if self.max_cluster_loops < 1 or self.max_boundary_loops < 0:
            raise ConfigError("loop limits must be positive")
        if self.eta1 < 0.0 or self.eta2 < 0.0:
            raise ConfigError("eta coefficients must be non-negative")
        if not 0.0 < self.beta < 1.0:
            raise ConfigError(f"beta must lie in (0, 1), got {self.beta}")
        if not (self.crob_speed > 0.0 and self.trob_speed > 0.0):
            raise ConfigError("robot speeds must be positive")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "PlannerConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        return cls(**data)

    def replace(self, **overrides) -> "PlannerConfig":
        merged = self.to_dict()
        merged.update(overrides)
        return PlannerConfig.from_dict(merged)
