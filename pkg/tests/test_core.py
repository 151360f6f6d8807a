"""
Tests for the CriticalMemoryToolkit orchestrator
"""

import numpy as np
import pytest

from critical_memory import CriticalMemoryToolkit
from critical_memory.coherent import Packing
from critical_memory.dynamics import ground_peak_fraction
from critical_memory.errors import InvalidInputError
from critical_memory.network import uniform_model


@pytest.fixture
def toolkit(config):
    return CriticalMemoryToolkit(config=config)


def test_config_file_is_loaded(tmp_path):
    path = tmp_path / "settings.json"
    path.write_text('{"time_points": 9, "log_level": "error"}')
    toolkit = CriticalMemoryToolkit(config_path=str(path))
    assert toolkit.config.time_points == 9
    assert toolkit.config.log_level == "ERROR"


def test_analyze_searches_splits(toolkit):
    report = toolkit.analyze(uniform_model(4, 0.01), ds=(1, 2), budgets=(1.0,))
    assert report["n"] == 4
    assert len(report["splits"]) == 4
    assert [row["d"] for row in report["capacity"]] == [1, 2]
    assert report["guaranteed"]["1.0"]["d"] >= 2


def test_analyze_with_given_split(toolkit, matrix_g):
    report = toolkit.analyze(matrix_g, gapless_set=[3, 4, 5], ds=(3,), budgets=(1.0,))
    assert len(report["splits"]) == 1
    assert report["splits"][0]["excited_set"] == [0, 1, 2]
    assert report["capacity"][0]["count"] == 64


def test_unknown_engine(toolkit, uniform_three):
    with pytest.raises(InvalidInputError, match="engine"):
        toolkit.evolve(uniform_three, [0.0, 0.5, 0.5], 0.05, engine="classical")


def test_meanfield_evolution_summary(toolkit, uniform_three):
    run = toolkit.evolve(uniform_three, [0.0, 0.5, 0.5], 0.05, engine="meanfield", times=np.linspace(0, 20, 5))
    summary = run["summary"]
    assert summary["engine"] == "meanfield"
    assert summary["kind"] == "critical"
    assert summary["samples"] == 5
    assert 0.0 <= summary["final_fidelity"] <= 1.0
    assert run["stimulus"].tolist() == [0.0, 0.5, 0.5]


def test_exact_evolution_on_small_network(toolkit):
    q = 0.1
    run = toolkit.evolve(uniform_model(2, 0.01), [0.0, 0.2], q, times=np.linspace(0, np.pi / q, 9))
    result = run["result"]
    assert result.engine == "exact"
    assert result.mode_labels == (1,)
    assert result.y_expect[-1, 0] == pytest.approx(0.2, abs=1e-3)
    assert run["summary"]["final_fidelity"] == pytest.approx(1.0)


@pytest.mark.slow
def test_compare_critical_and_ground(toolkit, uniform_three):
    q = 0.05
    comparison = toolkit.compare(uniform_three, [0.0, 0.5, 0.5], q)
    summary = comparison["summary"]

    assert summary["gap"] == pytest.approx(1.0)
    assert summary["critical_fidelity"] > 0.999
    assert summary["critical_max_deviation"] < 2e-2
    assert summary["expected_peak_ratio"] == pytest.approx(ground_peak_fraction(q))
    assert summary["peak_ratio"] == pytest.approx(summary["expected_peak_ratio"], rel=1e-2)
    assert summary["peak_ratio_fit"] == pytest.approx(summary["expected_peak_ratio"], rel=1e-3)
    assert summary["ground_frequency_fit"] == pytest.approx(summary["expected_ground_frequency"], rel=1e-3)
    assert summary["peak_ratio"] < 0.01 * summary["critical_fidelity"]


def test_compare_needs_a_stimulus(toolkit, uniform_three):
    with pytest.raises(InvalidInputError):
        toolkit.compare(uniform_three, [0.3, 0.0, 0.0], 0.05)


def test_pack(toolkit):
    packing = toolkit.pack(0.01, 3, 0.0, 1.0, 0.05)
    assert isinstance(packing, Packing)
    assert packing.count == 61

    frame = toolkit.pack_sweep([0.02, 0.01], 3, 0.0, 1.0, 0.05)
    assert frame["count"].tolist()[-1] == 61


def test_worked_example(toolkit):
    report = toolkit.paper_example()
    assert report["xi"] == pytest.approx([1e10, 3e10, 2e10], rel=1e-9)
    assert report["relative_residual"] <= 1e-9
    assert report["unit_pattern_gap"] == pytest.approx(1.2e-9, rel=1e-12)
    assert report["capacity"] == "(d+1)^3 patterns for gapless set of size 3"
    assert report["patterns_d3"] == 64
    assert set(report["patterns_at_guaranteed_cap"]) == {"1.0", "6.0"}
    assert report["patterns_at_guaranteed_cap"]["6.0"]["d"] > report["patterns_at_guaranteed_cap"]["1.0"]["d"]
