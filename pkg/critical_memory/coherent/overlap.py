"""
Coherent-state patterns, their overlaps and classical energy gap
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence

import numpy as np

from ..config import Config, get_config
from ..errors import InvalidInputError
from ..network import NetworkModel


@dataclass(frozen=True, eq=False)
class ClassicalPattern:
    """
    Product coherent state on the gapless modes, alpha_j = sqrt(Y_j) e^{i theta_j}
    """

    alphas: np.ndarray

    def __post_init__(self):
        alphas = np.array(self.alphas, dtype=complex)
        if alphas.ndim != 1 or alphas.size == 0:
            raise InvalidInputError("A classical pattern needs a nonempty amplitude vector")
        if not np.all(np.isfinite(alphas)):
            raise InvalidInputError("Pattern amplitudes must be finite")
        alphas.setflags(write=False)
        object.__setattr__(self, "alphas", alphas)

    @classmethod
    def from_occupations(cls, y: Sequence[float], phases: Optional[Sequence[float]] = None) -> "ClassicalPattern":
        y = np.asarray(y, dtype=float)
        if np.any(y < 0):
            raise InvalidInputError("Occupations must be nonnegative")
        theta = np.zeros_like(y) if phases is None else np.asarray(phases, dtype=float)
        return cls(np.sqrt(y) * np.exp(1j * theta))

    @property
    def mode_count(self) -> int:
        return int(self.alphas.size)

    @property
    def occupations(self) -> np.ndarray:
        return np.abs(self.alphas) ** 2

    def check_excursion(self, g: float, kappa: Optional[float] = None, config: Optional[Config] = None):
        """
        Require |alpha_j|^2 <= kappa/g, the small-excursion regime around the critical state

        Raises:
            InvalidInputError: Some mode exceeds the bound
        """
        kappa = get_config(config).coherent_kappa if kappa is None else kappa
        bound = kappa / g
        worst = float(np.max(self.occupations))
        if worst > bound:
            raise InvalidInputError(
                f"Pattern occupation {worst:.6g} exceeds the small-excursion bound kappa/g = {bound:.6g}"
            )

    def same_as(self, other: "ClassicalPattern") -> bool:
        return np.array_equal(self.alphas, other.alphas)

    def to_dict(self) -> Dict[str, Any]:
        return {"alphas": [[a.real, a.imag] for a in self.alphas]}


def _pair(p: ClassicalPattern, other: ClassicalPattern):
    if p.mode_count != other.mode_count:
        raise InvalidInputError(f"Patterns have {p.mode_count} and {other.mode_count} modes")
    return p.alphas, other.alphas


def distance_sq(p: ClassicalPattern, other: ClassicalPattern) -> float:
    """sum_j |alpha_j - alpha'_j|^2"""
    a, b = _pair(p, other)
    return float(np.sum(np.abs(a - b) ** 2))


def overlap_sq(p: ClassicalPattern, other: ClassicalPattern) -> float:
    """|<alpha|alpha'>|^2 = exp(-sum_j |alpha_j - alpha'_j|^2)"""
    return float(np.exp(-distance_sq(p, other)))


def overlap_amplitude(p: ClassicalPattern, other: ClassicalPattern) -> complex:
    """<alpha|alpha'> with phase, exp(sum_j conj(alpha_j) alpha'_j - |alpha_j|^2/2 - |alpha'_j|^2/2)"""
    a, b = _pair(p, other)
    exponent = np.sum(a.conj() * b - 0.5 * np.abs(a) ** 2 - 0.5 * np.abs(b) ** 2)
    return complex(np.exp(exponent))


def distinguishable(p: ClassicalPattern, other: ClassicalPattern, threshold: Optional[float] = None,
                    config: Optional[Config] = None) -> bool:
    """True when the squared distance reaches ``threshold`` (overlap at most e^-threshold)"""
    threshold = get_config(config).distance_threshold if threshold is None else threshold
    return distance_sq(p, other) >= threshold


def classical_gap(model: NetworkModel, pattern: ClassicalPattern) -> float:
    """
    |E(Y) - E(0)| of the reduced model at real occupations Y_j = |alpha_j|^2

    At criticality the thresholds vanish and this is sum_{j,k} W_jk Y_j Y_k,
    i.e. (g/2) sum_{j != k} |alpha_j|^2 |alpha_k|^2 for a uniform network.
    """
    if pattern.mode_count != model.n:
        raise InvalidInputError(f"Pattern has {pattern.mode_count} modes, model has {model.n}")
    y = pattern.occupations
    # the frozen offset cancels in the difference
    return abs(float(model.thresholds @ y - y @ model.weights @ y))
