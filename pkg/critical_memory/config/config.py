"""
Configuration for the critical-memory toolkit

Settings are read from keyword arguments, then ``CRITICAL_MEMORY_*`` environment
variables, then an optional ``.env`` file.
"""

import json
import runpy
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..errors import ScenarioError


class Config(BaseSettings):
    """
    Runtime settings shared by all compute modules

    Limits guard memory and run time; tolerances set the acceptance criteria
    of the solvers and integrators.
    """

    model_config = SettingsConfigDict(
        env_prefix="CRITICAL_MEMORY_",
        env_file=".env",
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Capacity limits
    dimension_limit: int = Field(2_000_000, gt=0)
    enumeration_limit: int = Field(10_000_000, gt=0)
    search_mode_limit: int = Field(24, gt=1)

    # Critical-state solver
    critical_tolerance: float = Field(1e-9, gt=0)

    # Fock space
    coherent_tail_tolerance: float = Field(1e-8, gt=0)

    # Exact engine
    krylov_tolerance: float = Field(1e-10, gt=0)
    krylov_max_dim: int = Field(40, ge=4)
    norm_drift_limit: float = Field(1e-8, gt=0)

    # Mean-field engine
    meanfield_drift_limit: float = Field(1e-8, gt=0)
    meanfield_min_step: float = Field(1e-9, gt=0)

    # Sampling and classical patterns
    time_points: int = Field(64, ge=2)
    coherent_kappa: float = Field(0.01, gt=0)
    distance_threshold: float = Field(1.0, gt=0)

    # Output
    float_digits: int = Field(12, ge=4, le=17)
    max_workers: int = Field(1, ge=1)

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "Config":
        """
        Load configuration from a JSON file or a Python module of constants

        Args:
            path: ``.json`` file with field names as keys, or ``.py`` file with
                upper-case constants such as ``DIMENSION_LIMIT = 500000``

        Returns:
            Config instance
        """
        path = Path(path)
        if not path.exists():
            raise ScenarioError(f"Configuration file not found: {path}")

        if path.suffix == ".json":
            with open(path, "r", encoding="utf-8") as fh:
                raw: Dict[str, Any] = json.load(fh)
        elif path.suffix == ".py":
            namespace = runpy.run_path(str(path))
            raw = {k.lower(): v for k, v in namespace.items() if k.isupper()}
        else:
            raise ScenarioError(f"Unsupported configuration format: {path.suffix}")

        known = {k: v for k, v in raw.items() if k in cls.model_fields}
        return cls(**known)

    def get_limits(self) -> Dict[str, int]:
        """Capacity limits as a plain dictionary"""
        return {
            "dimension_limit": self.dimension_limit,
            "enumeration_limit": self.enumeration_limit,
            "search_mode_limit": self.search_mode_limit,
        }


_default: Optional[Config] = None


def get_config(config: Optional[Config] = None) -> Config:
    """Return ``config`` or the lazily created process-wide default"""
    global _default
    if config is not None:
        return config
    if _default is None:
        _default = Config()
    return _default
