"""
Configuration module for the critical-memory toolkit
"""

from .config import Config, get_config
from .scenario import ScenarioConfig, build_scenario, load_scenario, parse_overrides

__all__ = ["Config", "get_config", "ScenarioConfig", "build_scenario", "load_scenario", "parse_overrides"]
