"""
Exact unitary evolution on the truncated Fock space

|psi(t + dt)> = exp(-i H dt)|psi(t)> is applied through a Lanczos
projection onto a small Krylov subspace. The projected propagator is exact
on the subspace; the step is halved until the a-posteriori error estimate
beta_m |e_m^T exp(-i T dt) e_1| is below the Krylov tolerance.
"""

import time as clock
from typing import Optional, Sequence, Tuple

import numpy as np
import scipy.sparse as sp
from loguru import logger
from scipy.linalg import eigh_tridiagonal

from ..config import Config, get_config
from ..errors import InvalidInputError, StepUnderflowError
from ..fock import FockBasis, QuantumState, SparseOperator
from ..network import NetworkModel, build_hamiltonian, channel_number_operator
from .monitors import ConservationMonitor
from .result import EvolutionResult, validate_times

NORMALIZATION_TOLERANCE = 1e-10
MIN_STEP_FRACTION = 1e-14


def _lanczos(matrix: sp.csr_matrix, start: np.ndarray, max_dim: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """
    Lanczos tridiagonalization with full reorthogonalization

    Returns:
        (vectors, alphas, betas, residual); ``vectors`` rows span the Krylov
        space, ``residual`` is the norm of the next, unused Lanczos vector
        (0 when an invariant subspace was found)
    """
    dim = start.size
    max_dim = min(max_dim, dim)
    vectors = np.zeros((max_dim, dim), dtype=complex)
    vectors[0] = start / np.linalg.norm(start)
    alphas, betas = [], []

    for k in range(max_dim):
        w = matrix @ vectors[k]
        alpha = float(np.vdot(vectors[k], w).real)
        w = w - alpha * vectors[k]
        if k > 0:
            w = w - betas[k - 1] * vectors[k - 1]
        block = vectors[: k + 1]
        w = w - block.T @ (block.conj() @ w)
        alphas.append(alpha)

        beta = float(np.linalg.norm(w))
        breakdown = 1e-13 * (1.0 + max(abs(a) for a in alphas))
        if beta <= breakdown:
            return vectors[: k + 1], np.array(alphas), np.array(betas), 0.0
        if k + 1 == max_dim:
            return vectors[: k + 1], np.array(alphas), np.array(betas), beta
        betas.append(beta)
        vectors[k + 1] = w / beta

    raise AssertionError("unreachable")


def _tridiagonal_eigen(alphas: np.ndarray, betas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if alphas.size == 1:
        return alphas.copy(), np.ones((1, 1))
    return eigh_tridiagonal(alphas, betas)


class KrylovPropagator:
    """
    Adaptive Krylov stepping for a fixed sparse Hamiltonian

    The diagonal mean is shifted out before projection; it only contributes
    a global phase.
    """

    def __init__(self, hamiltonian: SparseOperator, config: Optional[Config] = None):
        self.config = get_config(config)
        self.tolerance = self.config.krylov_tolerance
        self.max_dim = self.config.krylov_max_dim

        diagonal = hamiltonian.matrix.diagonal()
        self.shift = float(np.mean(diagonal.real)) if diagonal.size else 0.0
        dim = hamiltonian.dimension
        self.matrix = (hamiltonian.matrix - self.shift * sp.identity(dim, dtype=complex, format="csr")).tocsr()

        self.step_guess: Optional[float] = None
        self.steps = 0
        self.max_krylov_dim = 0

    def advance(self, psi: np.ndarray, duration: float) -> np.ndarray:
        """Propagate ``psi`` by ``duration`` with as many adaptive steps as needed"""
        remaining = float(duration)
        floor = MIN_STEP_FRACTION * max(duration, 1.0)
        last_stable = None

        while remaining > 0:
            norm = float(np.linalg.norm(psi))
            if norm == 0.0:
                return psi
            vectors, alphas, betas, residual = _lanczos(self.matrix, psi, self.max_dim)
            evals, evecs = _tridiagonal_eigen(alphas, betas)
            first = evecs[0]

            dt = remaining if self.step_guess is None else min(remaining, self.step_guess)
            while True:
                coeffs = evecs @ (np.exp(-1j * evals * dt) * first)
                error = residual * abs(coeffs[-1])
                if error <= self.tolerance:
                    break
                dt *= 0.5
                if dt < floor:
                    raise StepUnderflowError(
                        f"Krylov step fell below {floor:.3e} with dimension {alphas.size}; "
                        f"raise krylov_max_dim",
                        last_stable_step=last_stable,
                    )

            psi = norm * np.exp(-1j * self.shift * dt) * (vectors.T @ coeffs)
            remaining -= dt
            if remaining < floor:
                remaining = 0.0

            self.steps += 1
            self.max_krylov_dim = max(self.max_krylov_dim, alphas.size)
            last_stable = dt
            # grow only after a step that fit comfortably
            self.step_guess = 2.0 * dt if error < 0.1 * self.tolerance else dt
            logger.debug(f"Krylov step dt={dt:.4g} dim={alphas.size} error={error:.2e}")

        return psi


def evolve_exact(
    model: NetworkModel,
    basis: FockBasis,
    initial: QuantumState,
    times: Sequence[float],
    config: Optional[Config] = None,
    monitor: Optional[ConservationMonitor] = None,
) -> EvolutionResult:
    """
    Unitary evolution of ``initial`` under the model Hamiltonian

    Args:
        model: Model with an input layer
        basis: Basis with n output modes followed by n input modes
        initial: Normalized state on ``basis``
        times: Nondecreasing sample times
        config: Settings for the Krylov tolerance and drift limits
        monitor: Conservation monitor; one is created when omitted

    Returns:
        EvolutionResult with energy and channel numbers tracked

    Raises:
        NormDriftError: Norm drift above the per-unit-time limit
    """
    config = get_config(config)
    if model.input_layer is None:
        raise InvalidInputError("Exact evolution needs a model with an input layer")
    if initial.basis is not basis:
        raise InvalidInputError("Initial state is defined on a different basis")
    if abs(initial.norm_sq() - 1.0) > NORMALIZATION_TOLERANCE:
        raise InvalidInputError(f"Initial state is not normalized: |psi|^2 = {initial.norm_sq():.12g}")
    grid = validate_times(times)

    hamiltonian = build_hamiltonian(model, basis)
    channels = [channel_number_operator(model, basis, j) for j in range(model.n)]
    monitor = monitor or ConservationMonitor(config, hamiltonian=hamiltonian, channel_operators=channels)

    propagator = KrylovPropagator(hamiltonian, config)
    state = initial.copy()
    monitor.start(state)

    n = model.n
    y_expect = np.zeros((grid.size, n))
    x_expect = np.zeros((grid.size, n))
    norm_drift = np.zeros(grid.size)
    energy = np.zeros(grid.size)
    channel_numbers = np.zeros((grid.size, n))

    logger.info(f"Exact evolution: dimension={basis.dimension} samples={grid.size} t_final={grid[-1]:.6g}")
    started = clock.perf_counter()

    current = 0.0
    for i, t in enumerate(grid):
        if t > current:
            state.amplitudes = propagator.advance(state.amplitudes, t - current)
            current = t

        monitor.check(t, state)
        occupations = state.mode_expectations()
        y_expect[i] = occupations[:n]
        x_expect[i] = occupations[n:2 * n]
        norm_drift[i] = abs(1.0 - state.norm_sq())
        energy[i] = state.expectation(hamiltonian).real
        channel_numbers[i] = y_expect[i] + x_expect[i]

    elapsed = clock.perf_counter() - started
    logger.info(f"Exact evolution finished: {propagator.steps} steps in {elapsed:.2f}s")

    return EvolutionResult(
        times=grid,
        y_expect=y_expect,
        x_expect=x_expect,
        norm_drift=norm_drift,
        engine="exact",
        energy=energy,
        channel_numbers=channel_numbers,
        mode_labels=model.mode_labels,
        steps=propagator.steps,
        diagnostics={
            "dimension": basis.dimension,
            "krylov_dim": propagator.max_krylov_dim,
            "alerts": len(monitor.alerts),
        },
    )


def energy_spread(hamiltonian: SparseOperator, state: QuantumState) -> float:
    """
    Energy uncertainty sqrt(<H^2> - <H>^2) of ``state``

    Its inverse sets the time scale on which a superposition of patterns
    dephases.
    """
    if hamiltonian.dimension != state.basis.dimension:
        raise InvalidInputError("Operator and state dimensions differ")
    applied = hamiltonian.matrix @ state.amplitudes
    norm = state.norm_sq()
    mean = float(np.vdot(state.amplitudes, applied).real) / norm
    centered = applied - mean * state.amplitudes
    return float(np.sqrt(np.vdot(centered, centered).real / norm))
