"""Shared fixtures: scenarios, random streams and settings isolation."""

import numpy as np
import pytest

from config.scenario import SystemConfig
from config.settings import reload_settings
from numerics.rng import RngStream


@pytest.fixture
def published_config() -> SystemConfig:
    """Published scenario defaults."""
    return SystemConfig()


@pytest.fixture
def bench_config() -> SystemConfig:
    """Published geometry with a 0 dB path-loss intercept, so both strategies are feasible."""
    return SystemConfig(path_loss_intercept_db=0.0)


@pytest.fixture
def rng() -> RngStream:
    return RngStream(seed=2024)


@pytest.fixture
def generator() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture(autouse=True)
def fresh_settings():
    """Commands mutate the global settings; every test starts from the environment."""
    reload_settings()
    yield
    reload_settings()
