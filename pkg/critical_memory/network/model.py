"""
Neural-network model: thresholds, excitatory weights and optional input layer

Energies follow H = sum_j eps_j Y_j - sum_{j,k} W_jk Y_j Y_k with the double
sum over ordered pairs. The uniform constructor writes g/2 off the diagonal,
so the pairwise coupling is g and the lowered threshold reads 1 - g*y.
"""

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..errors import InvalidInputError, ModelValidationError

SYMMETRY_TOLERANCE = 1e-14


@dataclass(frozen=True)
class InputLayer:
    """
    Input neurons X_j, one per output neuron

    Attributes:
        coupling: q; each channel carries the hopping (q/2)(b^dag a + a^dag b)
        input_gap: Threshold of every input neuron (0 for the softest stimulus)
    """

    coupling: float
    input_gap: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.coupling) or self.coupling < 0:
            raise ModelValidationError(f"Input coupling must be finite and >= 0, got {self.coupling}")
        if not np.isfinite(self.input_gap):
            raise ModelValidationError("Input gap must be finite")


@dataclass(frozen=True, eq=False)
class NetworkModel:
    """
    Frozen synaptic network

    Attributes:
        thresholds: eps_j per neuron
        weights: Symmetric W_jk with zero diagonal and nonnegative entries
        input_layer: Optional input layer
        reduced: True for models produced by freezing modes; such models may
            carry zero or negative thresholds
        offset: Constant energy carried over from frozen modes
        mode_labels: Original mode index of every remaining neuron
    """

    thresholds: np.ndarray
    weights: np.ndarray
    input_layer: Optional[InputLayer] = None
    reduced: bool = False
    offset: float = 0.0
    mode_labels: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        thresholds = np.array(self.thresholds, dtype=float)
        weights = np.array(self.weights, dtype=float)

        if thresholds.ndim != 1 or thresholds.size < 1:
            raise ModelValidationError("Thresholds must be a nonempty vector")
        n = thresholds.size
        if weights.shape != (n, n):
            raise ModelValidationError(f"Weights shape {weights.shape} does not match {n} thresholds")
        if not (np.all(np.isfinite(thresholds)) and np.all(np.isfinite(weights))):
            raise ModelValidationError("Thresholds and weights must be finite")
        if np.max(np.abs(weights - weights.T)) > SYMMETRY_TOLERANCE:
            raise ModelValidationError("Weight matrix is not symmetric")
        if np.any(np.diag(weights) != 0.0):
            raise ModelValidationError("Weight matrix diagonal must be exactly zero")
        if np.any(weights < 0):
            raise ModelValidationError("Weights must be nonnegative (excitatory)")
        if not self.reduced and np.any(thresholds <= 0):
            raise ModelValidationError("Thresholds must be strictly positive")

        labels = tuple(self.mode_labels) if self.mode_labels else tuple(range(n))
        if len(labels) != n:
            raise ModelValidationError(f"{len(labels)} mode labels for {n} neurons")

        thresholds.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "thresholds", thresholds)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "mode_labels", labels)
        object.__setattr__(self, "offset", float(self.offset))

    @property
    def n(self) -> int:
        return int(self.thresholds.size)

    @property
    def mode_count(self) -> int:
        """Modes needed in a basis: n output neurons, plus n inputs with a layer"""
        return 2 * self.n if self.input_layer is not None else self.n

    def with_input_layer(self, coupling: float, input_gap: float = 0.0) -> "NetworkModel":
        return NetworkModel(
            thresholds=self.thresholds,
            weights=self.weights,
            input_layer=InputLayer(coupling=coupling, input_gap=input_gap),
            reduced=self.reduced,
            offset=self.offset,
            mode_labels=self.mode_labels,
        )

    def same_as(self, other: "NetworkModel") -> bool:
        """Field-wise equality"""
        return (
            np.array_equal(self.thresholds, other.thresholds)
            and np.array_equal(self.weights, other.weights)
            and self.input_layer == other.input_layer
            and self.reduced == other.reduced
            and self.offset == other.offset
            and self.mode_labels == other.mode_labels
        )


def uniform_model(n: int, g: float) -> NetworkModel:
    """
    Universal thresholds eps_j = 1 and weights W_jk = g/2 for j != k

    Args:
        n: Neuron count, at least 2
        g: Positive pairwise coupling
    """
    if n < 2:
        raise InvalidInputError(f"A uniform network needs n >= 2, got {n}")
    if not (np.isfinite(g) and g > 0):
        raise InvalidInputError(f"Coupling g must be positive, got {g}")

    weights = np.full((n, n), g / 2.0)
    np.fill_diagonal(weights, 0.0)
    return NetworkModel(thresholds=np.ones(n), weights=weights)


def _occupations(model: NetworkModel, y: Sequence[float]) -> np.ndarray:
    occ = np.asarray(y, dtype=float)
    if occ.shape != (model.n,):
        raise InvalidInputError(f"Occupation vector has length {occ.size}, expected {model.n}")
    if np.any(occ < 0):
        raise InvalidInputError("Occupations must be nonnegative")
    return occ


def energy_of_number_state(model: NetworkModel, y: Sequence[float]) -> float:
    """
    Diagonal energy sum_j eps_j y_j - sum_{j,k} W_jk y_j y_k (+ frozen offset)

    Real occupations are admitted for mean-field states.
    """
    occ = _occupations(model, y)
    return float(model.thresholds @ occ - occ @ model.weights @ occ + model.offset)


def frozen_reduction(model: NetworkModel, frozen: Mapping[int, float]) -> NetworkModel:
    """
    Replace frozen mode operators by their expectation values

    eps'_j = eps_j - 2 sum_f W_jf v_f on the remaining modes; the constant
    sum_f eps_f v_f - sum_{f,f'} W_ff' v_f v_f' is added to the offset.

    Args:
        model: Model to reduce
        frozen: Mode index -> frozen occupation value

    Returns:
        Reduced model flagged ``reduced=True``
    """
    frozen_idx = sorted(int(k) for k in frozen)
    for mode in frozen_idx:
        if not 0 <= mode < model.n:
            raise InvalidInputError(f"Unknown mode {mode} for a model with {model.n} neurons")
    if len(frozen_idx) >= model.n:
        raise InvalidInputError("At least one mode must remain unfrozen")

    values = np.array([float(frozen[k]) for k in frozen_idx])
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise InvalidInputError("Frozen values must be finite and nonnegative")

    keep = [j for j in range(model.n) if j not in set(frozen_idx)]
    w_kf = model.weights[np.ix_(keep, frozen_idx)]
    w_ff = model.weights[np.ix_(frozen_idx, frozen_idx)]

    thresholds = model.thresholds[keep] - 2.0 * w_kf @ values
    offset = model.offset + float(model.thresholds[frozen_idx] @ values - values @ w_ff @ values)

    logger.debug(f"Froze modes {frozen_idx}; offset {offset:.6g}")
    return NetworkModel(
        thresholds=thresholds,
        weights=model.weights[np.ix_(keep, keep)],
        input_layer=model.input_layer,
        reduced=True,
        offset=offset,
        mode_labels=tuple(model.mode_labels[j] for j in keep),
    )
