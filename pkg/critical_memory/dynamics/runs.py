"""
Preparation of critical and unexcited recall runs
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from loguru import logger

from ..config import Config, get_config
from ..critical import CriticalSolution, bogoliubov_error, solve_critical_split
from ..errors import InvalidInputError
from ..fock import FockBasis, QuantumState, build_basis, coherent_state, number_state, required_cap
from ..network import NetworkModel, frozen_reduction
from .meanfield import CoherentConfig

RUN_KINDS = ("critical", "ground")


@dataclass
class RunSetup:
    """
    Everything both engines need for one recall run

    Attributes:
        kind: "critical" or "ground"
        model: Model evolved by the exact engine (reduced for critical runs)
        basis: Basis for ``model``
        state: Initial quantum state
        stimulus: Stimulus on the output neurons of ``model``
        full_model: Unreduced model with the input layer, for the mean-field engine
        classical: Initial classical configuration on ``full_model``
        full_stimulus: Stimulus on all neurons of ``full_model``
        solution: Critical split used to freeze the excited mode
    """

    kind: str
    model: NetworkModel
    basis: FockBasis
    state: QuantumState
    stimulus: np.ndarray
    full_model: NetworkModel
    classical: CoherentConfig
    full_stimulus: np.ndarray
    solution: Optional[CriticalSolution] = None

    def diagnostics(self):
        report = {
            "kind": self.kind,
            "dimension": self.basis.dimension,
            "caps": list(self.basis.caps),
            "truncation_error": self.state.truncation_error,
            "stimulus": self.full_stimulus.tolist(),
        }
        if self.solution is not None:
            report["frozen_modes"] = list(self.solution.excited_set)
            report["xi"] = self.solution.xi.tolist()
            report["bogoliubov_error"] = [bogoliubov_error(v) for v in self.solution.xi if v > 0]
        return report


def _channel_caps(x: np.ndarray, cap: Optional[int], tolerance: float, number_input: bool) -> list:
    caps = []
    for value in x:
        if value == 0:
            caps.append(0)
        elif cap is not None:
            caps.append(int(cap))
        elif number_input:
            caps.append(int(value))
        else:
            caps.append(required_cap(float(value), tolerance))
    return caps


def prepare_run(
    model: NetworkModel,
    stimulus: Sequence[float],
    initial: str = "critical",
    excited_mode: int = 0,
    cap: Optional[int] = None,
    coupling: Optional[float] = None,
    number_input: bool = False,
    config: Optional[Config] = None,
) -> RunSetup:
    """
    Build the model, basis and initial states for a recall run

    A critical run freezes ``excited_mode`` at its critical excitation level
    and zeroes its stimulus. Each channel gets cap 0 when unstimulated, since
    channel numbers are conserved and the output layer starts empty.

    Args:
        model: Unreduced network model
        stimulus: Input occupations X_j, one per neuron
        initial: "critical" or "ground"
        excited_mode: Mode frozen in a critical run
        cap: Cap for stimulated channels; sized from the stimulus tail when omitted
        coupling: Input coupling q; required when ``model`` has no input layer
        number_input: Use the number state |X> instead of a coherent stimulus
        config: Settings
    """
    config = get_config(config)
    if initial not in RUN_KINDS:
        raise InvalidInputError(f"Unknown initial state '{initial}', expected one of {RUN_KINDS}")

    x_full = np.asarray(stimulus, dtype=float)
    if x_full.shape != (model.n,):
        raise InvalidInputError(f"Stimulus has {x_full.size} entries for {model.n} neurons")
    if np.any(x_full < 0) or not np.all(np.isfinite(x_full)):
        raise InvalidInputError("Stimulus must be finite and nonnegative")
    if number_input and not np.all(x_full == np.round(x_full)):
        raise InvalidInputError("Number-state stimuli need integer occupations")

    if coupling is not None:
        full = model.with_input_layer(coupling, model.input_layer.input_gap if model.input_layer else 0.0)
    elif model.input_layer is not None:
        full = model
    else:
        raise InvalidInputError("An input coupling q is required for a model without an input layer")

    a = np.zeros(model.n, dtype=complex)
    solution = None

    if initial == "critical":
        if not 0 <= excited_mode < model.n:
            raise InvalidInputError(f"Excited mode {excited_mode} out of range [0, {model.n - 1}]")
        gapless = [j for j in range(model.n) if j != excited_mode]
        solution = solve_critical_split(full, gapless, config=config)
        if x_full[excited_mode] != 0:
            logger.info(f"Stimulus on frozen mode {excited_mode} set to zero")
            x_full = x_full.copy()
            x_full[excited_mode] = 0.0
        evolved = frozen_reduction(full, solution.frozen_values())
        x = x_full[gapless]
        a[excited_mode] = np.sqrt(solution.xi[0])
    else:
        evolved = full
        x = x_full

    caps = _channel_caps(x, cap, config.coherent_tail_tolerance, number_input)
    basis = build_basis(2 * evolved.n, caps + caps, config=config)

    if number_input:
        state = number_state(basis, [0] * evolved.n + [int(v) for v in x])
    else:
        alphas = np.concatenate([np.zeros(evolved.n), np.sqrt(x)])
        state = coherent_state(basis, alphas, config=config)

    setup = RunSetup(
        kind=initial,
        model=evolved,
        basis=basis,
        state=state,
        stimulus=x,
        full_model=full,
        classical=CoherentConfig(a=a, b=np.sqrt(x_full)),
        full_stimulus=x_full,
        solution=solution,
    )
    logger.info(f"Prepared {initial} run: dimension={basis.dimension} caps={basis.caps}")
    return setup
