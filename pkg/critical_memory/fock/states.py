"""
Quantum states over a truncated Fock basis

Amplitudes are stored densely; states of interest are not sparse after
evolution.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, List, Optional, Sequence

import numpy as np
from loguru import logger
from scipy.special import gammaln
from scipy.stats import poisson

from ..config import Config, get_config
from ..errors import InvalidInputError, TruncationError
from .basis import FockBasis
from .operators import SparseOperator


@dataclass(eq=False)
class QuantumState:
    """
    Normalized amplitude vector over a FockBasis

    Single-owner mutable: engines update ``amplitudes`` in place.
    ``truncation_error`` is the probability weight removed by the caps
    before renormalization.
    """

    basis: FockBasis
    amplitudes: np.ndarray
    truncation_error: float = 0.0

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.basis.dimension,):
            raise InvalidInputError(
                f"Amplitude vector length {self.amplitudes.size} != basis dimension {self.basis.dimension}"
            )

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def inner(self, other: "QuantumState") -> complex:
        """<self|other>"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def expectation(self, operator: SparseOperator) -> complex:
        value = complex(np.vdot(self.amplitudes, operator.matrix @ self.amplitudes))
        return value

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def mode_expectations(self) -> np.ndarray:
        """<Y_j> for every mode, read off the diagonal number operators"""
        return self.probabilities() @ self.basis.states

    def copy(self) -> "QuantumState":
        return QuantumState(self.basis, self.amplitudes.copy(), self.truncation_error)


def number_state(basis: FockBasis, occupation: Sequence[int]) -> QuantumState:
    """The basis ket |y_0, ..., y_{m-1}>"""
    amplitudes = np.zeros(basis.dimension, dtype=complex)
    amplitudes[basis.index(occupation)] = 1.0
    return QuantumState(basis, amplitudes)


def vacuum(basis: FockBasis) -> QuantumState:
    return number_state(basis, [0] * basis.mode_count)


def required_cap(mean: float, tolerance: float) -> int:
    """Smallest cap whose Poisson tail weight is at most ``tolerance``"""
    if mean == 0.0:
        return 0
    cap = int(max(poisson.isf(tolerance, mean), 0))
    while cap > 0 and poisson.sf(cap - 1, mean) <= tolerance:
        cap -= 1
    while poisson.sf(cap, mean) > tolerance:
        cap += 1
    return cap


def _mode_amplitudes(alpha: complex, cap: int) -> np.ndarray:
    y = np.arange(cap + 1)
    vector = np.zeros(cap + 1, dtype=complex)
    if alpha == 0:
        vector[0] = 1.0
        return vector
    magnitude = abs(alpha)
    log_mod = y * np.log(magnitude) - 0.5 * gammaln(y + 1) - 0.5 * magnitude ** 2
    return np.exp(log_mod) * np.exp(1j * y * np.angle(alpha))


def coherent_state(
    basis: FockBasis,
    alphas: Sequence[complex],
    config: Optional[Config] = None,
    tail_tolerance: Optional[float] = None,
) -> QuantumState:
    """
    Product coherent state a_j|alpha> = alpha_j|alpha> truncated to the caps

    Args:
        basis: Target basis
        alphas: One complex amplitude per mode
        config: Settings providing ``coherent_tail_tolerance``
        tail_tolerance: Overrides the configured per-mode tail bound

    Returns:
        Renormalized QuantumState; ``truncation_error`` holds the removed weight
    """
    config = get_config(config)
    tolerance = config.coherent_tail_tolerance if tail_tolerance is None else tail_tolerance

    alphas = np.asarray(alphas, dtype=complex)
    if alphas.shape != (basis.mode_count,):
        raise InvalidInputError(f"{alphas.size} amplitudes given for {basis.mode_count} modes")
    if not np.all(np.isfinite(alphas)):
        raise InvalidInputError("Coherent amplitudes must be finite")

    vectors: List[np.ndarray] = []
    for mode, (alpha, cap) in enumerate(zip(alphas, basis.caps)):
        mean = abs(alpha) ** 2
        tail = float(poisson.sf(cap, mean)) if mean > 0 else 0.0
        if tail > tolerance:
            needed = required_cap(mean, tolerance)
            raise TruncationError(
                f"Coherent amplitude |alpha|^2={mean:.6g} on mode {mode} leaks {tail:.3e} "
                f"beyond cap {cap}; cap {needed} required for tail <= {tolerance:.1e}",
                mode=mode,
                required_cap=needed,
            )
        vectors.append(_mode_amplitudes(alpha, cap))

    amplitudes = reduce(np.kron, vectors)
    weight = float(np.vdot(amplitudes, amplitudes).real)
    amplitudes = amplitudes / np.sqrt(weight)

    logger.debug(f"Coherent state on {basis.mode_count} modes, truncation error {1.0 - weight:.3e}")
    return QuantumState(basis, amplitudes, truncation_error=max(1.0 - weight, 0.0))


def library_state(
    basis: FockBasis,
    patterns: Iterable[Sequence[int]],
    amplitudes: Optional[Sequence[complex]] = None,
) -> QuantumState:
    """
    Normalized superposition of number-state patterns

    Args:
        basis: Target basis
        patterns: Full occupation vectors, pairwise distinct
        amplitudes: Relative weights; equal weights when omitted
    """
    indices = [basis.index(p) for p in patterns]
    if not indices:
        raise InvalidInputError("A pattern library needs at least one pattern")
    if len(set(indices)) != len(indices):
        raise InvalidInputError("Pattern library contains duplicate patterns")

    weights = np.ones(len(indices), dtype=complex) if amplitudes is None else np.asarray(amplitudes, dtype=complex)
    if weights.shape != (len(indices),):
        raise InvalidInputError(f"{weights.size} amplitudes given for {len(indices)} patterns")
    norm = np.linalg.norm(weights)
    if norm == 0:
        raise InvalidInputError("Pattern library amplitudes are all zero")

    vector = np.zeros(basis.dimension, dtype=complex)
    vector[indices] = weights / norm
    return QuantumState(basis, vector)
