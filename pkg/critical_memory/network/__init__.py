"""
Network Hamiltonian: model definition, reduction, assembly and model files
"""

from .hamiltonian import build_hamiltonian, channel_number_operator, hamiltonian_diagonal
from .io import ModelSpec, bundled_model, dump_model, load_model, model_from_dict
from .model import InputLayer, NetworkModel, energy_of_number_state, frozen_reduction, uniform_model

__all__ = [
    "InputLayer",
    "NetworkModel",
    "energy_of_number_state",
    "frozen_reduction",
    "uniform_model",
    "build_hamiltonian",
    "channel_number_operator",
    "hamiltonian_diagonal",
    "ModelSpec",
    "bundled_model",
    "dump_model",
    "load_model",
    "model_from_dict",
]
