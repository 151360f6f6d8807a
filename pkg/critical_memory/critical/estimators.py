"""
Order-of-magnitude scaling estimators

These are scalings, not measurements: constants of order one are dropped.
"""

import math

from ..errors import InvalidInputError


def _positive(name: str, value: float):
    if not (math.isfinite(value) and value > 0):
        raise InvalidInputError(f"{name} must be positive, got {value}")


def entropy_estimate(g: float) -> float:
    """Entropy of the critical state, ~ 1/sqrt(g)"""
    _positive("g", g)
    return 1.0 / math.sqrt(g)


def decoherence_bound(g: float, n: int) -> float:
    """Lower bound on the lifetime of a library superposition, 1/(g n^2)"""
    _positive("g", g)
    if n < 2:
        raise InvalidInputError(f"n must be >= 2, got {n}")
    return 1.0 / (g * n * n)


def thermalization_time(g: float, temperature: float) -> float:
    """Thermalization time against a weakly coupled environment, 1/(g^2 T)"""
    _positive("g", g)
    _positive("temperature", temperature)
    return 1.0 / (g * g * temperature)


def bogoliubov_error(occupation: float) -> float:
    """Relative error of replacing ladder operators by c-numbers at occupation y, ~ 1/y"""
    _positive("occupation", occupation)
    return 1.0 / occupation
