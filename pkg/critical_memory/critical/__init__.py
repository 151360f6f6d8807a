"""
Critical-state analysis: splits, effective gaps, pattern capacity and scalings
"""

from .estimators import bogoliubov_error, decoherence_bound, entropy_estimate, thermalization_time
from .patterns import (
    PatternLibrary,
    capacity_table,
    enumerate_patterns,
    gap_between,
    guaranteed_cap,
    pattern_count,
    uniform_capacity,
)
from .splits import (
    CriticalSolution,
    effective_threshold,
    effective_thresholds,
    search_critical_splits,
    solve_critical_split,
)

__all__ = [
    "CriticalSolution",
    "effective_threshold",
    "effective_thresholds",
    "search_critical_splits",
    "solve_critical_split",
    "PatternLibrary",
    "capacity_table",
    "enumerate_patterns",
    "gap_between",
    "guaranteed_cap",
    "pattern_count",
    "uniform_capacity",
    "bogoliubov_error",
    "decoherence_bound",
    "entropy_estimate",
    "thermalization_time",
]
