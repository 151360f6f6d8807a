"""
Tests for the truncated Fock space: basis, operators and states
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from critical_memory.config import Config
from critical_memory.errors import DimensionLimitError, InvalidInputError, TruncationError
from critical_memory.fock import (
    build_basis,
    coherent_state,
    commutator,
    identity,
    ladder_operators,
    library_state,
    number_operator,
    number_state,
    required_cap,
    vacuum,
)


def test_basis_is_lexicographic_last_mode_fastest():
    basis = build_basis(2, (1, 2))
    assert basis.dimension == 6
    assert basis.states.tolist() == [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4))
def test_index_inverts_occupation(caps):
    basis = build_basis(len(caps), caps)
    for i in range(basis.dimension):
        assert basis.index(basis.occupation(i)) == i


def test_scalar_cap_applies_to_every_mode():
    basis = build_basis(3, 2)
    assert basis.caps == (2, 2, 2)
    assert len(basis) == 27


def test_dimension_limit_names_the_product():
    config = Config(dimension_limit=10, _env_file=None)
    with pytest.raises(DimensionLimitError) as info:
        build_basis(3, 2, config=config)
    assert "3 x 3 x 3 = 27" in str(info.value)
    assert info.value.dimension == 27
    assert info.value.exit_code == 4


def test_invalid_caps_and_occupations():
    with pytest.raises(InvalidInputError):
        build_basis(2, (1,))
    with pytest.raises(InvalidInputError):
        build_basis(2, (-1, 1))
    basis = build_basis(2, 1)
    with pytest.raises(InvalidInputError):
        basis.index((2, 0))


def test_annihilation_matrix_elements():
    basis = build_basis(1, 4)
    a, a_dag = ladder_operators(basis, 0)
    for n in range(1, 5):
        assert a.matrix[n - 1, n] == pytest.approx(np.sqrt(n))
        assert a_dag.matrix[n, n - 1] == pytest.approx(np.sqrt(n))
    assert a.nnz == 4


def test_commutator_is_identity_below_the_cap():
    basis = build_basis(2, (5, 3))
    a, a_dag = ladder_operators(basis, 0)
    diagonal = commutator(a, a_dag).matrix.diagonal().real
    below = basis.states[:, 0] < 5
    assert np.allclose(diagonal[below], 1.0)
    assert np.allclose(diagonal[~below], -5.0)


def test_number_operator_equals_a_dag_a():
    basis = build_basis(3, 2)
    a, a_dag = ladder_operators(basis, 1)
    product = (a_dag @ a).matrix
    assert abs(product - number_operator(basis, 1).matrix).max() < 1e-14


def test_operator_algebra_and_dump():
    basis = build_basis(1, 2)
    y = number_operator(basis, 0)
    total = y + identity(basis)
    assert total.hermitian and total.check_hermitian()
    assert total.matrix.diagonal().real.tolist() == [1.0, 2.0, 3.0]
    assert (total - y).matrix.diagonal().real.tolist() == [1.0, 1.0, 1.0]
    dump = total.to_dict()
    assert dump["dimension"] == 3
    assert dump["entries"] == [[0, 0, 1.0, 0.0], [1, 1, 2.0, 0.0], [2, 2, 3.0, 0.0]]


def test_mode_out_of_range():
    basis = build_basis(2, 1)
    with pytest.raises(InvalidInputError):
        ladder_operators(basis, 2)


def test_number_state_and_vacuum():
    basis = build_basis(2, 2)
    state = number_state(basis, (2, 1))
    assert state.norm_sq() == 1.0
    assert state.mode_expectations().tolist() == [2.0, 1.0]
    assert vacuum(basis).mode_expectations().tolist() == [0.0, 0.0]


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 2.0), st.floats(-np.pi, np.pi))
def test_coherent_state_mean_occupation(magnitude, phase):
    alpha = magnitude * np.exp(1j * phase)
    cap = max(required_cap(magnitude ** 2, 1e-12), 1)
    basis = build_basis(1, cap)
    state = coherent_state(basis, [alpha], tail_tolerance=1e-12)
    assert state.norm_sq() == pytest.approx(1.0, abs=1e-12)
    assert state.mode_expectations()[0] == pytest.approx(magnitude ** 2, abs=1e-9)
    a, _ = ladder_operators(basis, 0)
    # eigenvalue relation up to the truncated tail
    assert state.expectation(a) == pytest.approx(alpha, abs=1e-5)


def test_coherent_state_too_small_cap_reports_required_cap():
    basis = build_basis(1, 3)
    with pytest.raises(TruncationError) as info:
        coherent_state(basis, [np.sqrt(0.5)])
    assert info.value.required_cap == required_cap(0.5, 1e-8)
    assert info.value.required_cap > 3
    assert "cap" in str(info.value)


def test_required_cap_is_minimal():
    from scipy.stats import poisson

    for mean in (0.1, 0.5, 2.0):
        cap = required_cap(mean, 1e-8)
        assert poisson.sf(cap, mean) <= 1e-8
        assert poisson.sf(cap - 1, mean) > 1e-8
    assert required_cap(0.0, 1e-8) == 0


def test_library_state_is_normalized_superposition():
    basis = build_basis(2, 2)
    state = library_state(basis, [(0, 0), (1, 1), (2, 0)])
    probabilities = state.probabilities()
    assert state.norm_sq() == pytest.approx(1.0)
    assert probabilities[basis.index((1, 1))] == pytest.approx(1 / 3)
    with pytest.raises(InvalidInputError):
        library_state(basis, [(0, 0), (0, 0)])
    with pytest.raises(InvalidInputError):
        library_state(basis, [])


def test_number_operators_commute():
    basis = build_basis(3, (2, 1, 3))
    numbers = [number_operator(basis, mode) for mode in range(3)]
    for j in range(3):
        for k in range(3):
            assert abs(commutator(numbers[j], numbers[k]).matrix).sum() == 0.0
    a, _ = ladder_operators(basis, 2)
    assert abs(commutator(numbers[0], a).matrix).sum() == 0.0


def test_zero_amplitude_gives_vacuum():
    basis = build_basis(2, 3)
    state = coherent_state(basis, [0.0, 0.0])
    assert state.amplitudes[0] == 1.0
    assert np.count_nonzero(state.amplitudes) == 1
    assert state.truncation_error == 0.0


def test_truncation_error_is_the_removed_poisson_weight():
    from scipy.stats import poisson

    basis = build_basis(2, (4, 5))
    state = coherent_state(basis, [np.sqrt(0.5), 0.6j], tail_tolerance=1e-3)
    tails = [poisson.sf(4, 0.5), poisson.sf(5, 0.36)]
    assert state.truncation_error == pytest.approx(1.0 - (1.0 - tails[0]) * (1.0 - tails[1]), rel=1e-6)
    assert state.truncation_error <= sum(tails)
    assert state.norm_sq() == pytest.approx(1.0, abs=1e-14)
