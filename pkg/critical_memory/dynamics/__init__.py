"""
Time evolution under input stimuli: exact, mean-field and closed-form responses
"""

from .analytic import (
    analytic_response_critical,
    analytic_response_ground,
    default_times,
    ground_frequency,
    ground_peak_fraction,
    rabi_period,
)
from .exact import KrylovPropagator, energy_spread, evolve_exact
from .meanfield import CoherentConfig, classical_energy, evolve_meanfield
from .monitors import ConservationMonitor
from .recall import fit_oscillation, peak_ratio, recall_fidelity
from .result import EvolutionResult, validate_times
from .runs import RunSetup, prepare_run

__all__ = [
    "analytic_response_critical",
    "analytic_response_ground",
    "default_times",
    "ground_frequency",
    "ground_peak_fraction",
    "rabi_period",
    "KrylovPropagator",
    "energy_spread",
    "evolve_exact",
    "CoherentConfig",
    "classical_energy",
    "evolve_meanfield",
    "ConservationMonitor",
    "fit_oscillation",
    "peak_ratio",
    "recall_fidelity",
    "EvolutionResult",
    "validate_times",
    "RunSetup",
    "prepare_run",
]
