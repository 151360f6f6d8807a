"""
Tests for network models, Hamiltonian assembly and model files
"""

import json

import numpy as np
import pytest

from critical_memory.errors import InvalidInputError, ModelValidationError
from critical_memory.fock import build_basis, commutator
from critical_memory.network import (
    NetworkModel,
    build_hamiltonian,
    bundled_model,
    channel_number_operator,
    dump_model,
    energy_of_number_state,
    frozen_reduction,
    hamiltonian_diagonal,
    load_model,
    model_from_dict,
    uniform_model,
)


class TestNetworkModel:
    def test_uniform_model_layout(self):
        model = uniform_model(4, 0.02)
        assert model.n == 4
        assert np.all(model.thresholds == 1.0)
        assert model.weights[0, 1] == pytest.approx(0.01)
        assert np.all(np.diag(model.weights) == 0.0)
        assert model.mode_count == 4
        assert model.with_input_layer(0.1).mode_count == 8

    @pytest.mark.parametrize(
        "thresholds, weights, message",
        [
            ([1.0, 1.0], [[0.0, 0.1], [0.2, 0.0]], "symmetric"),
            ([1.0, 1.0], [[0.1, 0.1], [0.1, 0.0]], "diagonal"),
            ([1.0, 1.0], [[0.0, -0.1], [-0.1, 0.0]], "nonnegative"),
            ([1.0, 0.0], [[0.0, 0.1], [0.1, 0.0]], "positive"),
            ([1.0, 1.0, 1.0], [[0.0, 0.1], [0.1, 0.0]], "shape"),
        ],
    )
    def test_invalid_models_are_rejected(self, thresholds, weights, message):
        with pytest.raises(ModelValidationError, match=message):
            NetworkModel(thresholds=thresholds, weights=weights)

    def test_reduced_models_allow_nonpositive_thresholds(self):
        model = NetworkModel(thresholds=[0.0, -0.5], weights=np.zeros((2, 2)), reduced=True)
        assert model.thresholds.tolist() == [0.0, -0.5]

    def test_uniform_rejects_bad_parameters(self):
        with pytest.raises(InvalidInputError):
            uniform_model(1, 0.1)
        with pytest.raises(InvalidInputError):
            uniform_model(3, 0.0)

    def test_energy_of_number_state(self, uniform_three):
        g = 1e-3
        assert energy_of_number_state(uniform_three, [1, 2, 0]) == pytest.approx(3.0 - 2.0 * g)
        assert energy_of_number_state(uniform_three, [0, 0, 0]) == 0.0


class TestFrozenReduction:
    def test_critical_freeze_of_uniform_network(self):
        g = 1e-3
        model = uniform_model(3, g)
        reduced = frozen_reduction(model, {0: 1.0 / g})

        assert reduced.reduced
        assert reduced.mode_labels == (1, 2)
        assert np.allclose(reduced.thresholds, 0.0, atol=1e-12)
        assert reduced.offset == pytest.approx(1.0 / g)

    @pytest.mark.parametrize("y1, y2", [(0, 0), (1, 0), (3, 2), (7, 5)])
    def test_energies_agree_with_full_model(self, y1, y2):
        model = uniform_model(3, 1e-2)
        reduced = frozen_reduction(model, {0: 100.0})
        full = energy_of_number_state(model, [100.0, y1, y2])
        assert energy_of_number_state(reduced, [y1, y2]) == pytest.approx(full, rel=1e-12)

    def test_input_layer_is_carried(self):
        model = uniform_model(3, 1e-2).with_input_layer(0.05)
        reduced = frozen_reduction(model, {1: 10.0})
        assert reduced.input_layer == model.input_layer
        assert reduced.mode_labels == (0, 2)

    def test_invalid_freezes(self):
        model = uniform_model(2, 1e-2)
        with pytest.raises(InvalidInputError):
            frozen_reduction(model, {0: 1.0, 1: 1.0})
        with pytest.raises(InvalidInputError):
            frozen_reduction(model, {2: 1.0})
        with pytest.raises(InvalidInputError):
            frozen_reduction(model, {0: -1.0})


class TestHamiltonian:
    def test_diagonal_matches_energy_function(self, uniform_three):
        basis = build_basis(3, 2)
        diagonal = hamiltonian_diagonal(uniform_three, basis)
        for i in range(basis.dimension):
            expected = energy_of_number_state(uniform_three, basis.occupation(i))
            assert diagonal[i] == pytest.approx(expected, abs=1e-14)

    def test_hopping_matrix_elements(self):
        model = NetworkModel(thresholds=[1.0, 1.0], weights=np.zeros((2, 2))).with_input_layer(0.3)
        basis = build_basis(4, 2)
        matrix = build_hamiltonian(model, basis).matrix

        source = basis.index((1, 0, 0, 0))
        target = basis.index((0, 0, 1, 0))
        assert matrix[target, source] == pytest.approx(0.15)
        assert matrix[source, target] == pytest.approx(0.15)

        source = basis.index((2, 0, 0, 0))
        target = basis.index((1, 0, 1, 0))
        assert matrix[target, source] == pytest.approx(0.15 * np.sqrt(2.0))

        # no hopping across channels
        assert matrix[basis.index((0, 0, 0, 1)), basis.index((1, 0, 0, 0))] == 0

    def test_hamiltonian_is_hermitian(self, uniform_three):
        model = uniform_three.with_input_layer(0.05, input_gap=0.2)
        basis = build_basis(6, 1)
        hamiltonian = build_hamiltonian(model, basis)
        assert hamiltonian.hermitian
        assert hamiltonian.check_hermitian()

    def test_channel_numbers_commute_with_hamiltonian(self):
        model = uniform_model(2, 0.1).with_input_layer(0.2)
        basis = build_basis(4, 2)
        hamiltonian = build_hamiltonian(model, basis)
        for channel in range(2):
            n_op = channel_number_operator(model, basis, channel)
            bracket = commutator(hamiltonian, n_op).matrix
            assert bracket.nnz == 0 or np.max(np.abs(bracket.data)) < 1e-14

    def test_layout_mismatch(self, uniform_three):
        with pytest.raises(InvalidInputError, match="modes"):
            build_hamiltonian(uniform_three.with_input_layer(0.1), build_basis(3, 1))
        with pytest.raises(InvalidInputError):
            channel_number_operator(uniform_three, build_basis(3, 1), 0)


class TestModelFiles:
    def test_dump_and_load_give_the_same_model(self, tmp_path):
        model = frozen_reduction(uniform_model(4, 3e-3).with_input_layer(0.05, 0.1), {2: 7.5})
        path = tmp_path / "model.json"
        dump_model(model, path, name="reduced")
        assert load_model(path).same_as(model)

    def test_weight_triplets_are_symmetrized(self):
        model = model_from_dict({
            "n": 3,
            "thresholds": [1, 2, 3],
            "weight_triplets": [[0, 1, 4], [2, 1, 1]],
            "weight_scale": 0.5,
        })
        assert model.weights[1, 0] == 2.0
        assert model.weights[1, 2] == 0.5
        assert model.weights[0, 2] == 0.0

    def test_both_weight_forms_rejected(self):
        with pytest.raises(ModelValidationError, match="exactly one"):
            model_from_dict({"n": 2, "thresholds": [1, 1], "weights": [[0, 1], [1, 0]],
                             "weight_triplets": [[0, 1, 1]]})

    def test_unknown_field_rejected(self):
        with pytest.raises(ModelValidationError):
            model_from_dict({"n": 2, "thresholds": [1, 1], "weights": [[0, 1], [1, 0]], "colour": "red"})

    def test_empty_and_missing_files(self, tmp_path):
        empty = tmp_path / "empty.json"
        empty.write_text("")
        with pytest.raises(ModelValidationError, match="empty"):
            load_model(empty)
        with pytest.raises(ModelValidationError, match="not found"):
            load_model(tmp_path / "missing.json")

    def test_invalid_json(self, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text("{\"n\": 2,")
        with pytest.raises(ModelValidationError, match="JSON"):
            load_model(broken)

    def test_bundled_matrix_g(self, matrix_g):
        assert matrix_g.n == 6
        assert matrix_g.thresholds.tolist() == [17, 6, 11, 25, 31, 43]
        assert matrix_g.weights[0, 5] == pytest.approx(5e-10)
        assert matrix_g.weights[5, 0] == matrix_g.weights[0, 5]

    def test_unknown_bundled_model(self):
        with pytest.raises(ModelValidationError):
            bundled_model("no_such_model")

    def test_dump_is_plain_json(self, tmp_path):
        path = tmp_path / "uniform.json"
        dump_model(uniform_model(2, 0.1), path)
        payload = json.loads(path.read_text())
        assert payload["n"] == 2
        assert "input_layer" not in payload
