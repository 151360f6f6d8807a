"""
Classical mean-field evolution

Ladder operators are replaced by complex amplitudes a_j (output) and b_j
(input), which obey

    i da_j/dt = (eps_j - 2 sum_k W_jk |a_k|^2) a_j + (q/2) b_j
    i db_j/dt = eps_x b_j + (q/2) a_j

Integration is classical RK4. In adaptive mode each sampling interval is
redone with half the step until the total occupation sum(|a|^2 + |b|^2)
drifts by less than the configured limit per unit time.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..config import Config, get_config
from ..errors import InvalidInputError, StepUnderflowError
from ..network import NetworkModel
from .result import EvolutionResult, validate_times


@dataclass
class CoherentConfig:
    """
    Classical configuration: one complex amplitude per output and input neuron

    Occupations are Y_j = |a_j|^2 and X_j = |b_j|^2.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.a = np.array(self.a, dtype=complex)
        self.b = np.array(self.b, dtype=complex)
        if self.a.ndim != 1 or self.a.shape != self.b.shape:
            raise InvalidInputError(f"Amplitude shapes differ: a{self.a.shape} b{self.b.shape}")
        if not (np.all(np.isfinite(self.a)) and np.all(np.isfinite(self.b))):
            raise InvalidInputError("Coherent amplitudes must be finite")

    @classmethod
    def from_occupations(
        cls,
        y: Sequence[float],
        x: Sequence[float],
        phases: Optional[Sequence[float]] = None,
    ) -> "CoherentConfig":
        """a_j = sqrt(Y_j) e^{i theta_j}, b_j = sqrt(X_j)"""
        y = np.asarray(y, dtype=float)
        x = np.asarray(x, dtype=float)
        if np.any(y < 0) or np.any(x < 0):
            raise InvalidInputError("Occupations must be nonnegative")
        theta = np.zeros_like(y) if phases is None else np.asarray(phases, dtype=float)
        return cls(a=np.sqrt(y) * np.exp(1j * theta), b=np.sqrt(x))

    @property
    def n(self) -> int:
        return int(self.a.size)

    @property
    def y(self) -> np.ndarray:
        return np.abs(self.a) ** 2

    @property
    def x(self) -> np.ndarray:
        return np.abs(self.b) ** 2

    def total_occupation(self) -> float:
        return float(self.y.sum() + self.x.sum())

    def to_dict(self) -> Dict[str, Any]:
        return {"a": self.a.tolist(), "b": self.b.tolist()}


def _coefficients(model: NetworkModel):
    layer = model.input_layer
    half_q = 0.5 * layer.coupling if layer is not None else 0.0
    eps_x = layer.input_gap if layer is not None else 0.0
    return model.thresholds, model.weights, half_q, eps_x


def _rhs(z: np.ndarray, n: int, eps: np.ndarray, weights: np.ndarray, half_q: float, eps_x: float) -> np.ndarray:
    a, b = z[:n], z[n:]
    density = (a * a.conj()).real
    da = -1j * ((eps - 2.0 * weights @ density) * a + half_q * b)
    db = -1j * (eps_x * b + half_q * a)
    return np.concatenate([da, db])


def _rk4(z: np.ndarray, duration: float, step: float, coeffs) -> Tuple[np.ndarray, int]:
    """Integrate over ``duration`` with equal steps no longer than ``step``"""
    count = max(1, math.ceil(duration / step - 1e-12))
    h = duration / count
    n = z.size // 2
    for _ in range(count):
        k1 = _rhs(z, n, *coeffs)
        k2 = _rhs(z + 0.5 * h * k1, n, *coeffs)
        k3 = _rhs(z + 0.5 * h * k2, n, *coeffs)
        k4 = _rhs(z + h * k3, n, *coeffs)
        z = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return z, count


def classical_energy(model: NetworkModel, state: CoherentConfig) -> float:
    """Energy function with operators replaced by the amplitudes"""
    eps, weights, half_q, eps_x = _coefficients(model)
    y = state.y
    hopping = 2.0 * half_q * float(np.sum((state.a.conj() * state.b).real))
    return float(eps @ y - y @ weights @ y + eps_x * state.x.sum() + hopping + model.offset)


def _initial_step(model: NetworkModel, state: CoherentConfig) -> float:
    eps, weights, half_q, eps_x = _coefficients(model)
    rate = np.max(np.abs(eps - 2.0 * weights @ state.y)) + abs(eps_x) + half_q
    return 0.1 / max(float(rate), 1e-3)


def evolve_meanfield(
    model: NetworkModel,
    initial: CoherentConfig,
    times: Sequence[float],
    config: Optional[Config] = None,
    step: Optional[float] = None,
    adaptive: bool = True,
) -> EvolutionResult:
    """
    Integrate the classical equations of motion

    Args:
        model: Network model; without an input layer q = 0 and eps_x = 0
        initial: Starting amplitudes, one pair per output neuron
        times: Nondecreasing sample times
        config: Settings for the drift limit and minimal step
        step: Initial (adaptive) or fixed step; estimated from the frequencies when omitted
        adaptive: Halve the step until the occupation drift limit holds

    Returns:
        EvolutionResult; ``norm_drift`` is |1 - N(t)/N(0)|

    Raises:
        StepUnderflowError: Step halving went below ``meanfield_min_step``
    """
    config = get_config(config)
    if initial.n != model.n:
        raise InvalidInputError(f"Configuration has {initial.n} neurons, model has {model.n}")
    grid = validate_times(times)
    if step is not None and not (np.isfinite(step) and step > 0):
        raise InvalidInputError(f"Step must be positive, got {step}")

    coeffs = _coefficients(model)
    h = step if step is not None else _initial_step(model, initial)
    limit = config.meanfield_drift_limit
    n = model.n

    z = np.concatenate([initial.a, initial.b])
    total0 = initial.total_occupation()

    y_expect = np.zeros((grid.size, n))
    x_expect = np.zeros((grid.size, n))
    norm_drift = np.zeros(grid.size)
    energy = np.zeros(grid.size)
    steps = 0
    halvings = 0
    last_stable: Optional[float] = None

    logger.info(f"Mean-field evolution: n={n} samples={grid.size} step={h:.4g} adaptive={adaptive}")

    current = 0.0
    for i, t in enumerate(grid):
        duration = t - current
        if duration > 0:
            while True:
                candidate, count = _rk4(z, duration, h, coeffs)
                if not adaptive or total0 == 0.0:
                    break
                total = float(np.sum(np.abs(candidate) ** 2))
                rate = abs(total - float(np.sum(np.abs(z) ** 2))) / total0 / duration
                if rate < limit:
                    break
                h *= 0.5
                halvings += 1
                logger.debug(f"Occupation drift {rate:.2e}/unit time at t={t:.6g}; step halved to {h:.3e}")
                if h < config.meanfield_min_step:
                    raise StepUnderflowError(
                        f"Mean-field step fell below {config.meanfield_min_step:.1e} at t={current:.6g}; "
                        f"last stable step {last_stable}",
                        last_stable_step=last_stable,
                    )
            z = candidate
            steps += count
            last_stable = h
            current = t

        sample = CoherentConfig(a=z[:n], b=z[n:])
        y_expect[i] = sample.y
        x_expect[i] = sample.x
        norm_drift[i] = abs(1.0 - sample.total_occupation() / total0) if total0 > 0 else 0.0
        energy[i] = classical_energy(model, sample)

    logger.info(f"Mean-field evolution finished: {steps} steps, {halvings} halvings, final step {h:.3e}")

    return EvolutionResult(
        times=grid,
        y_expect=y_expect,
        x_expect=x_expect,
        norm_drift=norm_drift,
        engine="meanfield",
        energy=energy,
        channel_numbers=y_expect + x_expect,
        mode_labels=model.mode_labels,
        steps=steps,
        diagnostics={
            "final_step": h,
            "halvings": halvings,
            "final_a": z[:n],
            "final_b": z[n:],
        },
    )
