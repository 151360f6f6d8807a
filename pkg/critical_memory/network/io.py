"""
Model files

JSON schema, validated with pydantic::

    {
      "name": "optional label",
      "n": 3,
      "thresholds": [1.0, 1.0, 1.0],
      "weights": [[0, 0.05, 0.05], [0.05, 0, 0.05], [0.05, 0.05, 0]],
      "weight_scale": 1.0,
      "input_layer": {"coupling": 0.05, "input_gap": 0.0}
    }

``weight_triplets`` ([[j, k, w], ...], symmetrized) may replace ``weights``.
"""

import json
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import ModelValidationError
from .model import InputLayer, NetworkModel


class InputLayerSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    coupling: float = Field(ge=0)
    input_gap: float = 0.0


class ModelSpec(BaseModel):
    """Serialized form of a NetworkModel"""

    model_config = ConfigDict(extra="forbid")

    name: Optional[str] = None
    description: Optional[str] = None
    n: int = Field(ge=1)
    thresholds: List[float]
    weights: Optional[List[List[float]]] = None
    weight_triplets: Optional[List[Tuple[int, int, float]]] = None
    weight_scale: float = Field(1.0, gt=0)
    input_layer: Optional[InputLayerSpec] = None
    reduced: bool = False
    offset: float = 0.0
    mode_labels: Optional[List[int]] = None

    @model_validator(mode="after")
    def _check_shapes(self) -> "ModelSpec":
        if len(self.thresholds) != self.n:
            raise ValueError(f"thresholds has {len(self.thresholds)} entries, expected n={self.n}")
        if (self.weights is None) == (self.weight_triplets is None):
            raise ValueError("exactly one of 'weights' or 'weight_triplets' is required")
        if self.weights is not None:
            if len(self.weights) != self.n or any(len(row) != self.n for row in self.weights):
                raise ValueError(f"weights must be a {self.n}x{self.n} array")
        else:
            for j, k, _ in self.weight_triplets:
                if not (0 <= j < self.n and 0 <= k < self.n):
                    raise ValueError(f"triplet index ({j}, {k}) out of range for n={self.n}")
        return self

    def weight_matrix(self) -> np.ndarray:
        if self.weights is not None:
            return np.asarray(self.weights, dtype=float) * self.weight_scale

        matrix = np.zeros((self.n, self.n))
        seen: Dict[Tuple[int, int], float] = {}
        for j, k, w in self.weight_triplets:
            key = (min(j, k), max(j, k))
            if key in seen and seen[key] != w:
                raise ModelValidationError(f"Conflicting weights for pair {key}")
            seen[key] = w
            matrix[j, k] = matrix[k, j] = w * self.weight_scale
        return matrix

    def to_model(self) -> NetworkModel:
        layer = None
        if self.input_layer is not None:
            layer = InputLayer(coupling=self.input_layer.coupling, input_gap=self.input_layer.input_gap)
        return NetworkModel(
            thresholds=np.asarray(self.thresholds, dtype=float),
            weights=self.weight_matrix(),
            input_layer=layer,
            reduced=self.reduced,
            offset=self.offset,
            mode_labels=tuple(self.mode_labels) if self.mode_labels else (),
        )

    @classmethod
    def from_model(cls, model: NetworkModel, name: Optional[str] = None) -> "ModelSpec":
        layer = None
        if model.input_layer is not None:
            layer = InputLayerSpec(
                coupling=model.input_layer.coupling,
                input_gap=model.input_layer.input_gap,
            )
        return cls(
            name=name,
            n=model.n,
            thresholds=model.thresholds.tolist(),
            weights=model.weights.tolist(),
            input_layer=layer,
            reduced=model.reduced,
            offset=model.offset,
            mode_labels=list(model.mode_labels),
        )


def model_from_dict(data: Any) -> NetworkModel:
    """Validate a parsed model document and build the model"""
    if not data:
        raise ModelValidationError("Model document is empty")
    try:
        return ModelSpec.model_validate(data).to_model()
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "model"
        raise ModelValidationError(f"Invalid model ({location}): {first['msg']}") from e


def load_model(path: Union[str, Path]) -> NetworkModel:
    """Read a model file"""
    path = Path(path)
    if not path.exists():
        raise ModelValidationError(f"Model file not found: {path}")

    text = path.read_text(encoding="utf-8")
    if not text.strip():
        raise ModelValidationError(f"Model file is empty: {path}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelValidationError(f"Model file is not valid JSON: {path}: {e.msg}") from e
    return model_from_dict(data)


def dump_model(model: NetworkModel, path: Union[str, Path], name: Optional[str] = None):
    """Write a model file that re-parses to an identical model"""
    document = ModelSpec.from_model(model, name=name)
    payload = document.model_dump(exclude_none=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def bundled_model(name: str = "matrix_g") -> NetworkModel:
    """Load a model shipped with the package, e.g. the six-neuron example ``matrix_g``"""
    resource = resources.files("critical_memory.network").joinpath("data", f"{name}.json")
    if not resource.is_file():
        raise ModelValidationError(f"No bundled model named '{name}'")
    return model_from_dict(json.loads(resource.read_text(encoding="utf-8")))
