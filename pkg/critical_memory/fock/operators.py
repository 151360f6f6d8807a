"""
Sparse ladder and number operators on a truncated Fock basis
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple, Union

import numpy as np
import scipy.sparse as sp

from ..errors import InvalidInputError
from .basis import FockBasis


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """
    Immutable sparse matrix acting on a Fock basis

    ``hermitian`` records a structural promise made at construction time;
    ``check_hermitian`` verifies it numerically.
    """

    matrix: sp.csr_matrix
    hermitian: bool = False
    label: str = ""

    @property
    def dimension(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def nnz(self) -> int:
        return int(self.matrix.nnz)

    def dagger(self) -> "SparseOperator":
        return SparseOperator(
            self.matrix.conj().T.tocsr(),
            hermitian=self.hermitian,
            label=f"{self.label}^dag" if self.label else "",
        )

    def __matmul__(self, other: Union["SparseOperator", np.ndarray]):
        if isinstance(other, SparseOperator):
            return SparseOperator((self.matrix @ other.matrix).tocsr())
        return self.matrix @ other

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(
            (self.matrix + other.matrix).tocsr(),
            hermitian=self.hermitian and other.hermitian,
        )

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return SparseOperator(
            (self.matrix - other.matrix).tocsr(),
            hermitian=self.hermitian and other.hermitian,
        )

    def check_hermitian(self, atol: float = 1e-14) -> bool:
        """True when entry(r, c) == conj(entry(c, r)) within ``atol``"""
        diff = self.matrix - self.matrix.conj().T
        if diff.nnz == 0:
            return True
        return bool(np.max(np.abs(diff.data)) <= atol)

    def entries(self) -> List[Tuple[int, int, complex]]:
        """Nonzero entries as (row, col, value), ordered by row then column"""
        coo = self.matrix.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [(int(coo.row[i]), int(coo.col[i]), complex(coo.data[i])) for i in order]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "dimension": self.dimension,
            "hermitian": self.hermitian,
            "entries": [[r, c, v.real, v.imag] for r, c, v in self.entries()],
        }


def _check_mode(basis: FockBasis, mode: int):
    if not 0 <= mode < basis.mode_count:
        raise InvalidInputError(f"Mode {mode} out of range [0, {basis.mode_count - 1}]")


def ladder_operators(basis: FockBasis, mode: int) -> Tuple[SparseOperator, SparseOperator]:
    """
    Annihilation and creation operators for one mode

    a|..., y, ...> = sqrt(y)|..., y-1, ...>; the image of a-dagger on a capped
    state is dropped.

    Returns:
        (annihilation, creation)
    """
    _check_mode(basis, mode)

    occ = basis.states[:, mode]
    cols = np.nonzero(occ > 0)[0]
    rows = cols - basis.strides[mode]
    values = np.sqrt(occ[cols].astype(float)).astype(complex)

    dim = basis.dimension
    matrix = sp.csr_matrix((values, (rows, cols)), shape=(dim, dim), dtype=complex)
    annihilation = SparseOperator(matrix, label=f"a_{mode}")
    return annihilation, annihilation.dagger()


def number_operator(basis: FockBasis, mode: int) -> SparseOperator:
    """Diagonal occupation operator Y_j = a_j^dag a_j"""
    _check_mode(basis, mode)
    diagonal = basis.states[:, mode].astype(complex)
    matrix = sp.diags(diagonal, format="csr", dtype=complex)
    return SparseOperator(matrix, hermitian=True, label=f"Y_{mode}")


def identity(basis: FockBasis) -> SparseOperator:
    return SparseOperator(sp.identity(basis.dimension, dtype=complex, format="csr"), hermitian=True)


def commutator(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    """[a, b] = ab - ba"""
    return SparseOperator((a.matrix @ b.matrix - b.matrix @ a.matrix).tocsr())
