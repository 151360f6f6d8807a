"""
Shared fixtures for the critical-memory test suite
"""

import pytest
from loguru import logger

from critical_memory.config import Config
from critical_memory.network import bundled_model, uniform_model


@pytest.fixture(autouse=True)
def _release_log_sinks():
    """Drop sinks bound to streams that a test runner may close"""
    yield
    logger.remove()


@pytest.fixture
def config():
    """Defaults without reading the environment's .env file"""
    return Config(log_level="WARNING", _env_file=None)


@pytest.fixture
def matrix_g():
    return bundled_model("matrix_g")


@pytest.fixture
def uniform_three():
    return uniform_model(3, 1e-3)
