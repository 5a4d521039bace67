"""Object reachability via rational pairwise swaps in housing markets."""

from .core import (
    Assignment, Instance, InvalidInstance, MissingValues, Network, NotAPath, NotAStar,
    NotNeighbors, NotRational, NotStrict, Query, SwapError, apply_swap, is_rational_swap,
    mirror, pareto_dominates, strict_instance, validate_instance, verify_sequence, welfare,
)

__all__ = [
    "Assignment", "Instance", "InvalidInstance", "MissingValues", "Network", "NotAPath",
    "NotAStar", "NotNeighbors", "NotRational", "NotStrict", "Query", "SwapError",
    "apply_swap", "is_rational_swap", "mirror", "pareto_dominates", "strict_instance",
    "validate_instance", "verify_sequence", "welfare",
]
