"""
Sparse Hamiltonian assembly

Basis mode layout: modes 0..n-1 are the output neurons Y_j; with an input
layer, modes n..2n-1 are the input neurons X_j.
"""

import numpy as np
import scipy.sparse as sp
from loguru import logger

from ..errors import InvalidInputError
from ..fock import FockBasis, SparseOperator
from .model import NetworkModel


def _check_layout(model: NetworkModel, basis: FockBasis):
    if basis.mode_count != model.mode_count:
        layout = "n output + n input" if model.input_layer is not None else "n output"
        raise InvalidInputError(
            f"Basis has {basis.mode_count} modes but the model needs {model.mode_count} ({layout})"
        )


def hamiltonian_diagonal(model: NetworkModel, basis: FockBasis) -> np.ndarray:
    """Diagonal of H in the number basis, equal to the energy function per state"""
    _check_layout(model, basis)
    n = model.n
    y = basis.states[:, :n].astype(float)
    diagonal = y @ model.thresholds - np.einsum("ij,jk,ik->i", y, model.weights, y) + model.offset

    if model.input_layer is not None:
        x = basis.states[:, n:2 * n].astype(float)
        diagonal = diagonal + model.input_layer.input_gap * x.sum(axis=1)
    return diagonal


def _hopping(model: NetworkModel, basis: FockBasis) -> sp.csr_matrix:
    """(q/2) sum_j (b_j^dag a_j + a_j^dag b_j)"""
    n = model.n
    dim = basis.dimension
    amplitude = 0.5 * model.input_layer.coupling
    caps = np.asarray(basis.caps)

    rows, cols, values = [], [], []
    for j in range(n):
        y = basis.states[:, j]
        x = basis.states[:, n + j]
        # b^dag a moves one quantum from Y_j into X_j
        source = np.nonzero((y > 0) & (x < caps[n + j]))[0]
        target = source - basis.strides[j] + basis.strides[n + j]
        rows.append(target)
        cols.append(source)
        values.append(amplitude * np.sqrt(y[source] * (x[source] + 1.0)))

    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    values = np.concatenate(values).astype(complex)
    forward = sp.csr_matrix((values, (rows, cols)), shape=(dim, dim), dtype=complex)
    return (forward + forward.conj().T).tocsr()


def build_hamiltonian(model: NetworkModel, basis: FockBasis) -> SparseOperator:
    """
    Assemble H as a Hermitian sparse operator

    The output-layer part is diagonal; an input layer adds the channel
    hopping and eps_x sum_j X_j.
    """
    diagonal = hamiltonian_diagonal(model, basis)
    matrix = sp.diags(diagonal.astype(complex), format="csr", dtype=complex)

    if model.input_layer is not None and model.input_layer.coupling != 0:
        matrix = (matrix + _hopping(model, basis)).tocsr()

    logger.debug(f"Assembled Hamiltonian: dimension={basis.dimension} nnz={matrix.nnz}")
    return SparseOperator(matrix, hermitian=True, label="H")


def channel_number_operator(model: NetworkModel, basis: FockBasis, channel: int) -> SparseOperator:
    """a_j^dag a_j + b_j^dag b_j, conserved by the hopping"""
    _check_layout(model, basis)
    if model.input_layer is None:
        raise InvalidInputError("Channel numbers are defined only with an input layer")
    if not 0 <= channel < model.n:
        raise InvalidInputError(f"Channel {channel} out of range [0, {model.n - 1}]")
    total = basis.states[:, channel] + basis.states[:, model.n + channel]
    return SparseOperator(
        sp.diags(total.astype(complex), format="csr", dtype=complex),
        hermitian=True,
        label=f"N_{channel}",
    )
