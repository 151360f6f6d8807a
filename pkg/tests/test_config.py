"""
Tests for settings, scenario validation and report serialization
"""

import json

import numpy as np
import pandas as pd
import pytest

from critical_memory.config import Config, build_scenario, load_scenario, parse_overrides
from critical_memory.errors import ScenarioError
from critical_memory.utils import dumps_csv, dumps_report, round_sig, write_csv, write_report


class TestConfig:
    def test_defaults(self, config):
        assert config.dimension_limit == 2_000_000
        assert config.critical_tolerance == 1e-9
        assert config.get_limits() == {
            "dimension_limit": 2_000_000,
            "enumeration_limit": 10_000_000,
            "search_mode_limit": 24,
        }

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("CRITICAL_MEMORY_DIMENSION_LIMIT", "123")
        monkeypatch.setenv("CRITICAL_MEMORY_LOG_LEVEL", "debug")
        config = Config(_env_file=None)
        assert config.dimension_limit == 123
        assert config.log_level == "DEBUG"

    def test_json_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"krylov_max_dim": 12, "unrelated": True}))
        assert Config.from_file(path).krylov_max_dim == 12

    def test_python_file(self, tmp_path):
        path = tmp_path / "config.py"
        path.write_text("DIMENSION_LIMIT = 5000\nMAX_WORKERS = 2\nhelper = 3\n")
        config = Config.from_file(path)
        assert config.dimension_limit == 5000
        assert config.max_workers == 2

    def test_bad_files(self, tmp_path):
        with pytest.raises(ScenarioError):
            Config.from_file(tmp_path / "missing.json")
        path = tmp_path / "config.yaml"
        path.write_text("a: 1")
        with pytest.raises(ScenarioError, match="Unsupported"):
            Config.from_file(path)

    def test_invalid_values(self):
        with pytest.raises(ValueError):
            Config(krylov_max_dim=2, _env_file=None)


class TestScenario:
    def test_pack_scenario(self):
        scenario = build_scenario({"task": "pack", "g": 0.01, "modes": 3, "budget": 1.0})
        assert scenario.threshold is None
        assert scenario.output_dir is None

    def test_evolve_scenario_with_inline_model(self):
        scenario = build_scenario({
            "task": "evolve",
            "model": {"inline": {"n": 2, "thresholds": [1, 1], "weights": [[0, 0.1], [0.1, 0]]}},
            "q": 0.05,
            "stimulus": [0.0, 0.3],
            "engine": "meanfield",
        })
        assert scenario.initial == "critical"
        assert scenario.engine == "meanfield"

    @pytest.mark.parametrize("data, message", [
        ({"task": "evolve", "model": {"uniform": {"n": 3, "g": 0.01}}, "stimulus": [0, 1, 1]}, "q must"),
        ({"task": "compare", "model": {"uniform": {"n": 3, "g": 0.01}}, "q": 0.1}, "stimulus"),
        ({"task": "analyze"}, "needs a model"),
        ({"task": "pack", "g": 0.01, "modes": 3}, "budget"),
        ({"task": "pack", "g": 0.01, "modes": 3, "budget": 1, "threshold": 0}, "threshold"),
        ({"task": "analyze", "model": {"uniform": {"n": 3, "g": 0.01}, "path": "x.json"}}, "exactly one"),
        ({"task": "launch"}, "task"),
        ({"task": "paper-example", "colour": "red"}, "colour"),
    ])
    def test_invalid_scenarios(self, data, message):
        with pytest.raises(ScenarioError, match=message):
            build_scenario(data)

    def test_overrides_are_parsed_as_json(self):
        overrides = parse_overrides(["q=0.1", "engine=meanfield", "stimulus=[0, 1]", "number_input=true"])
        assert overrides == {"q": 0.1, "engine": "meanfield", "stimulus": [0, 1], "number_input": True}
        with pytest.raises(ScenarioError):
            parse_overrides(["=1"])

    def test_load_scenario_file(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"task": "pack", "g": 0.01, "modes": 2, "budget": 1.0}))
        scenario = load_scenario(path, {"modes": 4})
        assert scenario.modes == 4

    @pytest.mark.parametrize("text, message", [("", "empty"), ("{", "JSON"), ("[1, 2]", "object")])
    def test_unreadable_scenario_files(self, tmp_path, text, message):
        path = tmp_path / "scenario.json"
        path.write_text(text)
        with pytest.raises(ScenarioError, match=message):
            load_scenario(path)


class TestSerialization:
    def test_round_sig(self):
        assert round_sig(1.23456789, 3) == 1.23
        assert round_sig(0.0) == 0.0
        assert np.isnan(round_sig(float("nan")))

    def test_report_is_sorted_and_plain(self, tmp_path):
        report = {"b": np.array([1.0, 2.0]), "a": np.int64(3), "c": 1 + 2j, "d": (np.float64(1 / 3),)}
        text = dumps_report(report, digits=6)
        assert list(json.loads(text)) == ["a", "b", "c", "d"]
        assert json.loads(text) == {"a": 3, "b": [1.0, 2.0], "c": [1.0, 2.0], "d": [0.333333]}

        path = tmp_path / "report.json"
        write_report(report, path, digits=6)
        assert path.read_text() == text

    def test_csv_header(self):
        frame = pd.DataFrame({"t": [0.0, 0.5], "Y_1": [0.0, 1.0 / 3.0]})
        text = dumps_csv(frame, "evolve-exact", digits=4, extra_header=["q=0.1"])
        assert text.splitlines() == [
            "# critical-memory evolve-exact v1 columns=t,Y_1",
            "# q=0.1",
            "t,Y_1",
            "0,0",
            "0.5,0.3333",
        ]

    def test_csv_file_matches_rendered_text(self, tmp_path):
        frame = pd.DataFrame({"g": [0.02, 0.01], "count": [7, 61]})
        path = tmp_path / "sweep.csv"
        write_csv(frame, path, "pack-sweep", digits=6)
        assert path.read_text() == dumps_csv(frame, "pack-sweep", digits=6)
        assert pd.read_csv(path, comment="#")["count"].tolist() == [7, 61]
