"""
Recall quality of an output pattern against its stimulus
"""

from typing import Sequence, Tuple

import numpy as np
from scipy.optimize import curve_fit

from ..errors import InvalidInputError


def recall_fidelity(y: Sequence[float], x: Sequence[float]) -> float:
    """
    Cosine similarity of ``y`` and ``x`` on the stimulated modes (x_j > 0)

    Returns:
        Value in [0, 1]; 1 exactly when y is a positive multiple of x there
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if y.shape != x.shape or y.ndim != 1:
        raise InvalidInputError(f"Pattern shapes differ: {y.shape} vs {x.shape}")
    if np.any(x < 0):
        raise InvalidInputError("Stimulus pattern must be nonnegative")

    stimulated = x > 0
    if not np.any(stimulated):
        raise InvalidInputError("Stimulus pattern is all zero")

    xs = x[stimulated]
    ys = y[stimulated]
    y_norm = float(np.linalg.norm(ys))
    if y_norm == 0.0:
        return 0.0
    cosine = float(ys @ xs) / (y_norm * float(np.linalg.norm(xs)))
    return float(np.clip(cosine, 0.0, 1.0))


def peak_ratio(y_series: np.ndarray, x: Sequence[float]) -> float:
    """Mean over stimulated modes of max_t Y_j(t) / X_j"""
    x = np.asarray(x, dtype=float)
    stimulated = x > 0
    if not np.any(stimulated):
        raise InvalidInputError("Stimulus pattern is all zero")
    peaks = np.max(np.asarray(y_series)[:, stimulated], axis=0)
    return float(np.mean(peaks / x[stimulated]))


def _sin_squared(t, amplitude, frequency):
    return amplitude * np.sin(0.5 * frequency * t) ** 2


def fit_oscillation(times: Sequence[float], series: Sequence[float]) -> Tuple[float, float]:
    """
    Least-squares fit of A sin^2(omega t / 2) to a response starting at zero

    The first sampled maximum seeds omega = pi / t_peak.

    Returns:
        (A, omega)
    """
    t = np.asarray(times, dtype=float)
    r = np.asarray(series, dtype=float)
    if t.shape != r.shape or t.size < 4:
        raise InvalidInputError("Need at least four matching samples to fit an oscillation")

    interior = np.nonzero((r[1:-1] >= r[:-2]) & (r[1:-1] >= r[2:]) & (r[1:-1] > 0))[0]
    peak = int(interior[0]) + 1 if interior.size else int(np.argmax(r))
    if t[peak] <= 0 or r[peak] <= 0:
        raise InvalidInputError("Response has no oscillation to fit")

    params, _ = curve_fit(_sin_squared, t, r, p0=(r[peak], np.pi / t[peak]))
    return float(params[0]), float(abs(params[1]))
