"""
Scenario files: one task with its parameters and outputs

A scenario is a JSON document validated before anything runs. Command-line
flags build the same structure, so both paths share one validation.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import ScenarioError

TASKS = ("analyze", "evolve", "compare", "pack", "paper-example")


class UniformSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=2)
    g: float = Field(gt=0)


class ModelSource(BaseModel):
    """Exactly one of a model file, an inline model document or a uniform network"""

    model_config = ConfigDict(extra="forbid")

    path: Optional[str] = None
    inline: Optional[Dict[str, Any]] = None
    uniform: Optional[UniformSpec] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "ModelSource":
        given = [name for name in ("path", "inline", "uniform") if getattr(self, name) is not None]
        if len(given) != 1:
            raise ValueError(f"model needs exactly one of path, inline, uniform; got {given or 'none'}")
        if self.path is not None and not Path(self.path).is_file():
            raise ValueError(f"model file not found: {self.path}")
        return self


class ScenarioConfig(BaseModel):
    """
    Validated task description

    Only the fields of the selected task are used; preconditions of that task
    are checked here so a scenario fails before any computation starts.
    """

    model_config = ConfigDict(extra="forbid")

    task: Literal["analyze", "evolve", "compare", "pack", "paper-example"]
    model: Optional[ModelSource] = None

    # analyze
    gapless: Optional[List[int]] = None
    max_excited: int = Field(1, ge=1)
    ds: List[int] = Field(default_factory=lambda: [1, 2, 3])
    budgets: List[float] = Field(default_factory=lambda: [1.0])

    # evolve / compare
    q: Optional[float] = None
    stimulus: Optional[List[float]] = None
    initial: Literal["critical", "ground"] = "critical"
    engine: Literal["exact", "meanfield"] = "exact"
    excited_mode: int = Field(0, ge=0)
    t_final: Optional[float] = Field(None, gt=0)
    points: Optional[int] = Field(None, ge=2)
    cap: Optional[int] = Field(None, ge=0)
    number_input: bool = False

    # pack
    g: Optional[float] = None
    modes: Optional[int] = Field(None, ge=1)
    budget: Optional[float] = None
    threshold: Optional[float] = None
    kappa: Optional[float] = None
    sweep: Optional[List[float]] = None

    output_dir: Optional[str] = None

    @model_validator(mode="after")
    def _task_parameters(self) -> "ScenarioConfig":
        if self.task in ("analyze", "evolve", "compare") and self.model is None:
            raise ValueError(f"task '{self.task}' needs a model")

        if self.task in ("evolve", "compare"):
            if self.q is None or self.q <= 0:
                raise ValueError("q must be given and positive")
            if not self.stimulus:
                raise ValueError("stimulus must be given")
            if any(x < 0 for x in self.stimulus):
                raise ValueError("stimulus must be nonnegative")

        if self.task == "analyze":
            if any(d < 0 for d in self.ds):
                raise ValueError("ds must be nonnegative")
            if any(b < 0 for b in self.budgets):
                raise ValueError("budgets must be nonnegative")

        if self.task == "pack":
            if self.g is None or self.g <= 0:
                raise ValueError("g must be given and positive")
            if self.modes is None:
                raise ValueError("modes must be given")
            if self.budget is None or self.budget < 0:
                raise ValueError("budget must be given and >= 0")
            if self.threshold is not None and self.threshold <= 0:
                raise ValueError("threshold must be positive")
            if self.sweep is not None and any(g <= 0 for g in self.sweep):
                raise ValueError("sweep couplings must be positive")
        return self


def _coerce(value: str) -> Any:
    try:
        return json.loads(value)
    except json.JSONDecodeError:
        return value


def parse_overrides(pairs: List[str]) -> Dict[str, Any]:
    """``key=value`` flags into a dict; values are parsed as JSON when possible"""
    overrides: Dict[str, Any] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ScenarioError(f"Override must look like key=value, got '{pair}'")
        overrides[key.strip()] = _coerce(value.strip())
    return overrides


def build_scenario(data: Dict[str, Any]) -> ScenarioConfig:
    """Validate a scenario document, reporting the first problem on one line"""
    try:
        return ScenarioConfig.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "scenario"
        raise ScenarioError(f"Invalid scenario ({location}): {first['msg']}") from e


def load_scenario(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> ScenarioConfig:
    """Read a JSON scenario file and apply flag overrides"""
    path = Path(path)
    if not path.is_file():
        raise ScenarioError(f"Scenario file not found: {path}")
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise ScenarioError(f"Scenario file is empty: {path}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"Scenario file is not valid JSON: {path}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ScenarioError("Scenario document must be a JSON object")
    data.update(overrides or {})
    return build_scenario(data)
