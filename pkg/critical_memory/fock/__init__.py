"""
Truncated bosonic Fock space: basis, sparse operators and states
"""

from .basis import FockBasis, build_basis
from .operators import SparseOperator, commutator, identity, ladder_operators, number_operator
from .states import QuantumState, coherent_state, library_state, number_state, required_cap, vacuum

__all__ = [
    "FockBasis",
    "build_basis",
    "SparseOperator",
    "commutator",
    "identity",
    "ladder_operators",
    "number_operator",
    "QuantumState",
    "coherent_state",
    "library_state",
    "number_state",
    "required_cap",
    "vacuum",
]
