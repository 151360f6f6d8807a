"""
Time-series container shared by the exact and mean-field engines
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..errors import InvalidInputError
from .recall import recall_fidelity

NEGATIVE_TOLERANCE = 1e-10


@dataclass
class EvolutionResult:
    """
    Expectation values sampled at the requested times

    Attributes:
        times: Sample times in units of hbar/eps
        y_expect: <Y_j(t)>, shape (len(times), n)
        x_expect: <X_j(t)>, shape (len(times), n)
        norm_drift: |1 - <psi|psi>| (exact) or relative total-occupation drift (mean-field)
        engine: "exact" or "meanfield"
        energy: <H(t)> when tracked
        channel_numbers: <Y_j + X_j>(t) when tracked
        mode_labels: Original mode index of every output neuron
        steps: Accepted integration steps
        diagnostics: Engine-specific run information
    """

    times: np.ndarray
    y_expect: np.ndarray
    x_expect: np.ndarray
    norm_drift: np.ndarray
    engine: str
    energy: Optional[np.ndarray] = None
    channel_numbers: Optional[np.ndarray] = None
    mode_labels: Tuple[int, ...] = ()
    steps: int = 0
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.y_expect = np.asarray(self.y_expect, dtype=float)
        self.x_expect = np.asarray(self.x_expect, dtype=float)
        self.norm_drift = np.asarray(self.norm_drift, dtype=float)

        samples = self.times.size
        if self.y_expect.ndim != 2 or self.y_expect.shape[0] != samples:
            raise InvalidInputError(f"y_expect shape {self.y_expect.shape} does not match {samples} samples")
        if self.x_expect.shape != self.y_expect.shape:
            raise InvalidInputError("x_expect and y_expect shapes differ")
        if np.any(self.y_expect < -NEGATIVE_TOLERANCE) or np.any(self.x_expect < -NEGATIVE_TOLERANCE):
            raise InvalidInputError("Occupation expectations must be nonnegative")
        if not self.mode_labels:
            self.mode_labels = tuple(range(self.n))

    @property
    def n(self) -> int:
        return int(self.y_expect.shape[1])

    def fidelity(self, stimulus: Sequence[float]) -> np.ndarray:
        """Recall fidelity of the output pattern against ``stimulus`` at every sample"""
        return np.array([recall_fidelity(y, stimulus) for y in self.y_expect])

    def max_drift_rate(self) -> float:
        """Largest drift per unit time over the run"""
        if self.times.size == 0:
            return 0.0
        return float(np.max(self.norm_drift / np.maximum(self.times, 1.0)))

    def to_frame(self, stimulus: Optional[Sequence[float]] = None) -> pd.DataFrame:
        """
        Plot-ready table with columns t, Y_1..Y_n, X_1..X_n, norm_drift[, fidelity]
        """
        data: Dict[str, np.ndarray] = {"t": self.times}
        for j in range(self.n):
            data[f"Y_{j + 1}"] = self.y_expect[:, j]
        for j in range(self.n):
            data[f"X_{j + 1}"] = self.x_expect[:, j]
        data["norm_drift"] = self.norm_drift
        if stimulus is not None:
            data["fidelity"] = self.fidelity(stimulus)
        return pd.DataFrame(data)

    def summary(self) -> Dict[str, Any]:
        report = {
            "engine": self.engine,
            "samples": int(self.times.size),
            "t_final": float(self.times[-1]) if self.times.size else 0.0,
            "steps": self.steps,
            "max_norm_drift": float(np.max(self.norm_drift)) if self.times.size else 0.0,
            "mode_labels": list(self.mode_labels),
        }
        if self.energy is not None and self.energy.size:
            report["energy_drift"] = float(np.max(np.abs(self.energy - self.energy[0])))
        report.update(self.diagnostics)
        return report


def validate_times(times: Sequence[float]) -> np.ndarray:
    """Sample grid as a float array; must be finite, nonnegative and nondecreasing"""
    grid = np.asarray(times, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidInputError("Sample times must be a nonempty vector")
    if not np.all(np.isfinite(grid)) or grid[0] < 0 or np.any(np.diff(grid) < 0):
        raise InvalidInputError("Sample times must be finite, nonnegative and nondecreasing")
    return grid
