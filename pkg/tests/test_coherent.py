"""
Tests for coherent-state patterns and their lattice packing
"""

from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from critical_memory.coherent import (
    ClassicalPattern,
    classical_gap,
    distance_sq,
    distinguishable,
    level_multiplicity,
    overlap_amplitude,
    overlap_sq,
    pack_patterns,
    pack_sweep,
)
from critical_memory.config import Config
from critical_memory.errors import EnumerationLimitError, InvalidInputError
from critical_memory.fock import build_basis, coherent_state
from critical_memory.network import frozen_reduction, uniform_model

amplitudes = st.complex_numbers(max_magnitude=1.5, allow_nan=False, allow_infinity=False)


def _critical_uniform(m, g):
    """Uniform network with one neuron frozen at 1/g, leaving m gapless neurons"""
    return frozen_reduction(uniform_model(m + 1, g), {0: 1.0 / g})


class TestOverlaps:
    @settings(max_examples=30, deadline=None)
    @given(amplitudes, amplitudes)
    def test_overlap_matches_truncated_fock_states(self, alpha, beta):
        basis = build_basis(1, 32)
        left = coherent_state(basis, [alpha])
        right = coherent_state(basis, [beta])
        p, other = ClassicalPattern(np.array([alpha])), ClassicalPattern(np.array([beta]))

        assert overlap_sq(p, other) == pytest.approx(abs(left.inner(right)) ** 2, abs=1e-10)
        assert overlap_amplitude(p, other) == pytest.approx(left.inner(right), abs=1e-10)

    def test_unit_distance_gives_inverse_e(self):
        p = ClassicalPattern.from_occupations([1.0, 0.0])
        other = ClassicalPattern.from_occupations([0.0, 0.0])
        assert distance_sq(p, other) == pytest.approx(1.0)
        assert overlap_sq(p, other) == pytest.approx(np.exp(-1.0))
        assert distinguishable(p, other, threshold=1.0)
        assert not distinguishable(p, other, threshold=1.5)

    def test_phases_enter_the_distance(self):
        p = ClassicalPattern.from_occupations([1.0], phases=[0.0])
        flipped = ClassicalPattern.from_occupations([1.0], phases=[np.pi])
        assert distance_sq(p, flipped) == pytest.approx(4.0)
        assert np.allclose(p.occupations, flipped.occupations)

    def test_mode_counts_must_match(self):
        with pytest.raises(InvalidInputError):
            distance_sq(ClassicalPattern(np.ones(2)), ClassicalPattern(np.ones(3)))


class TestClassicalGap:
    @pytest.mark.parametrize("d", [1, 3, 10])
    def test_uniform_gap_of_equal_occupations(self, d):
        g = 1e-3
        model = _critical_uniform(5, g)
        pattern = ClassicalPattern.from_occupations([d] * 5)
        assert classical_gap(model, pattern) == pytest.approx(10 * g * d * d, rel=1e-9)

    def test_gap_is_pairwise(self):
        g = 2e-3
        model = _critical_uniform(3, g)
        y = np.array([2.0, 0.5, 1.5])
        expected = 0.5 * g * (y.sum() ** 2 - (y ** 2).sum())
        assert classical_gap(model, ClassicalPattern.from_occupations(y)) == pytest.approx(expected, rel=1e-9)

    def test_single_mode_pattern_costs_nothing(self):
        model = _critical_uniform(3, 1e-2)
        gap = classical_gap(model, ClassicalPattern.from_occupations([4.0, 0.0, 0.0]))
        assert gap == pytest.approx(0.0, abs=1e-12)

    def test_excursion_bound(self):
        pattern = ClassicalPattern.from_occupations([5.0, 11.0])
        pattern_small = ClassicalPattern.from_occupations([5.0, 9.0])
        pattern_small.check_excursion(1e-3, kappa=0.01)
        with pytest.raises(InvalidInputError, match="small-excursion"):
            pattern.check_excursion(1e-3, kappa=0.01)


class TestPacking:
    G, MODES, BUDGET, THRESHOLD, KAPPA = 0.01, 3, 0.1, 1.0, 0.05

    def _packing(self, **overrides):
        params = dict(g=self.G, mode_count=self.MODES, gap_budget=self.BUDGET,
                      distance_threshold=self.THRESHOLD, kappa=self.KAPPA)
        params.update(overrides)
        return pack_patterns(**params)

    def test_level_multiplicity(self):
        assert level_multiplicity(5).tolist() == [1, 4, 4, 0, 4, 8]

    def test_count_matches_brute_force(self):
        packing = self._packing()
        assert packing.max_level == 5
        assert packing.pitch == pytest.approx(1.0)

        multiplicity = level_multiplicity(5)
        brute = 0
        for levels in product(range(6), repeat=3):
            pairs = sum(a * b for a, b in product(levels, repeat=2)) - sum(s * s for s in levels)
            if pairs <= 20:
                brute += int(np.prod([multiplicity[s] for s in levels]))
        assert packing.count == brute
        assert sum(1 for _ in packing.patterns()) == brute

    def test_admitted_patterns_are_distinguishable_and_fit_the_budget(self):
        packing = self._packing(distance_threshold=2.0, kappa=0.11)
        model = _critical_uniform(self.MODES, self.G)
        patterns = list(packing.patterns())

        assert len(patterns) == packing.count
        for p in patterns:
            assert classical_gap(model, p) <= self.BUDGET * (1 + 1e-9)
            p.check_excursion(self.G, kappa=0.11)
        for p, other in combinations(patterns[:150], 2):
            assert distance_sq(p, other) >= 2.0 * (1 - 1e-12)

    def test_zero_budget_keeps_the_axes(self):
        packing = self._packing(gap_budget=0.0)
        points = int(level_multiplicity(5).sum())
        assert packing.count == 1 + self.MODES * (points - 1)

    def test_count_grows_with_budget_and_shrinks_with_threshold(self):
        counts = [self._packing(gap_budget=b).count for b in (0.0, 0.05, 0.1, 0.2)]
        assert counts == sorted(counts)
        assert self._packing(distance_threshold=2.0).count <= self._packing().count

    def test_sweep_grows_as_coupling_decreases(self):
        frame = pack_sweep([0.02, 0.01, 0.005], self.MODES, self.BUDGET, self.THRESHOLD, self.KAPPA,
                           config=Config(_env_file=None))
        assert list(frame.columns) == ["g", "count", "max_level", "pitch"]
        assert frame["count"].is_monotonic_increasing
        assert frame["count"].iloc[1] == self._packing().count

    def test_parallel_count_matches_serial(self):
        config = Config(max_workers=4, _env_file=None)
        parallel = pack_patterns(self.G, self.MODES, self.BUDGET, self.THRESHOLD, self.KAPPA, config=config)
        assert parallel.count == self._packing().count

    def test_report(self):
        report = self._packing().to_dict()
        assert report["count"] == self._packing().count
        assert len(report["sample_patterns"]) == 10
        assert report["sample_patterns"][0] == [[0.0, 0.0]] * self.MODES

    def test_state_limit(self):
        config = Config(enumeration_limit=2, _env_file=None)
        with pytest.raises(EnumerationLimitError):
            pack_patterns(self.G, self.MODES, self.BUDGET, self.THRESHOLD, self.KAPPA, config=config)

    @pytest.mark.parametrize("overrides", [
        {"g": 0.0}, {"gap_budget": -1.0}, {"distance_threshold": 0.0}, {"kappa": -0.1}, {"mode_count": 0},
    ])
    def test_invalid_parameters(self, overrides):
        with pytest.raises(InvalidInputError):
            self._packing(**overrides)
