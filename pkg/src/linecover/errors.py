"""Exception hierarchy shared across the package."""


class LineCoverError(Exception):
    """Base class for all package errors."""


class ParseError(LineCoverError):
    """Input file or stream cannot be parsed; message names the offending record."""


class GraphValidationError(LineCoverError):
    """Graph data violates the road-network data model."""


class ConfigError(LineCoverError):
    """Invalid planner configuration value."""


class EnergyInfeasibleError(LineCoverError):
    """No energy-feasible tour set exists for the given instance."""


class PlanningError(LineCoverError):
    """An internal planning invariant was violated."""
