"""
Closed-form responses of the output layer to a stimulus

Each channel is a two-level hop between Y_j and X_j with matrix element q/2.
From a gapless (critical) output neuron the transfer is complete; from a
gapped one it is suppressed by q^2/(gap^2 + q^2).
"""

from typing import Sequence, Union

import numpy as np

from ..errors import InvalidInputError

TimeLike = Union[float, Sequence[float], np.ndarray]


def _validate(x: Sequence[float], q: float) -> np.ndarray:
    if not (np.isfinite(q) and q > 0):
        raise InvalidInputError(f"Input coupling q must be positive, got {q}")
    pattern = np.asarray(x, dtype=float)
    if pattern.ndim != 1 or np.any(pattern < 0) or not np.all(np.isfinite(pattern)):
        raise InvalidInputError("Input pattern must be a finite nonnegative vector")
    return pattern


def rabi_period(q: float) -> float:
    """pi/q, the time after which a critical output copies its input"""
    if not (np.isfinite(q) and q > 0):
        raise InvalidInputError(f"Input coupling q must be positive, got {q}")
    return float(np.pi / q)


def default_times(q: float, points: int = 64) -> np.ndarray:
    """Uniform grid over one Rabi period, endpoints included"""
    if points < 2:
        raise InvalidInputError(f"Need at least 2 time points, got {points}")
    return np.linspace(0.0, rabi_period(q), points)


def analytic_response_critical(x: Sequence[float], q: float, t: TimeLike) -> np.ndarray:
    """
    Y_j(t) = X_j sin^2(q t / 2)

    Scalar ``t`` gives a vector over modes; an array of times gives one row per time.
    """
    pattern = _validate(x, q)
    profile = np.sin(0.5 * q * np.asarray(t, dtype=float)) ** 2
    return np.multiply.outer(profile, pattern)


def analytic_response_ground(x: Sequence[float], q: float, t: TimeLike, gap: float = 1.0) -> np.ndarray:
    """
    Y_j(t) = X_j q^2/(gap^2 + q^2) sin^2(t sqrt(gap^2 + q^2) / 2)

    ``gap`` is the output threshold relative to the input one; gap=1 is the
    unexcited network and gap=0 recovers the critical response.
    """
    pattern = _validate(x, q)
    if not np.isfinite(gap):
        raise InvalidInputError("Gap must be finite")
    omega = np.sqrt(gap * gap + q * q)
    profile = (q * q / (omega * omega)) * np.sin(0.5 * omega * np.asarray(t, dtype=float)) ** 2
    return np.multiply.outer(profile, pattern)


def ground_peak_fraction(q: float, gap: float = 1.0) -> float:
    """Peak of Y_j / X_j from a gapped output, q^2/(gap^2 + q^2)"""
    if not (np.isfinite(q) and q > 0):
        raise InvalidInputError(f"Input coupling q must be positive, got {q}")
    return float(q * q / (gap * gap + q * q))


def ground_frequency(q: float, gap: float = 1.0) -> float:
    """Angular frequency sqrt(gap^2 + q^2) of the suppressed oscillation"""
    return float(np.sqrt(gap * gap + q * q))
