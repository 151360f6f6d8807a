"""
Example Configuration File for the Critical Memory Toolkit

Copy this file to config.py and pass it with --config. Every name is optional;
omitted settings keep their defaults.
"""

# Logging Configuration
LOG_LEVEL = "INFO"
LOG_FILE = None  # e.g. "critical_memory.log"

# Capacity Limits
DIMENSION_LIMIT = 2_000_000  # largest truncated Fock space
ENUMERATION_LIMIT = 10_000_000  # largest eager pattern or packing enumeration
SEARCH_MODE_LIMIT = 24  # largest network for exhaustive split search

# Critical-State Solver
CRITICAL_TOLERANCE = 1e-9  # residual relative to the largest threshold

# Fock Space
COHERENT_TAIL_TOLERANCE = 1e-8  # Poisson weight allowed beyond a cap

# Exact Engine
KRYLOV_TOLERANCE = 1e-10
KRYLOV_MAX_DIM = 40
NORM_DRIFT_LIMIT = 1e-8  # per unit time

# Mean-Field Engine
MEANFIELD_DRIFT_LIMIT = 1e-8  # relative occupation drift per unit time
MEANFIELD_MIN_STEP = 1e-9

# Sampling and Classical Patterns
TIME_POINTS = 64
COHERENT_KAPPA = 0.01  # |alpha|^2 <= kappa / g
DISTANCE_THRESHOLD = 1.0  # minimal squared distance between patterns

# Output
FLOAT_DIGITS = 12
MAX_WORKERS = 1
