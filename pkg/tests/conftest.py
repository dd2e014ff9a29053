"""
Shared fixtures for adsb-sentinel tests.

Synthetic flights and deliberately tiny model configurations keep the suite
fast; desk-scale reproductions are marked ``slow``.
"""

import numpy as np
import pytest

from adsb_sentinel.data import SynthProfile, synthesize_flights
from adsb_sentinel.models import ModelConfig

# Tiny widths so that a full forward/backward pass takes milliseconds.
TINY_MODEL = {
    "embedding_dim": 8,
    "num_blocks": 2,
    "slstm_positions": (1,),
    "num_layers": 2,
    "ffn_dim": 16,
}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: trains real (tiny) models end to end")


@pytest.fixture
def anyio_backend():
    return "asyncio"


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def short_profile():
    return SynthProfile(min_records=60, max_records=80)


@pytest.fixture(scope="session")
def flights(short_profile):
    """24 synthetic flights of 60-80 records."""
    return synthesize_flights(24, seed=7, profile=short_profile)


def tiny_config(architecture: str, seed: int = 0, **overrides) -> ModelConfig:
    values = dict(TINY_MODEL)
    values.update(overrides)
    if "dropout" not in values:
        values["dropout"] = 0.0
    return ModelConfig.defaults(architecture, seed=seed, **values)


@pytest.fixture(params=["xlstm", "transformer"])
def architecture(request):
    return request.param


@pytest.fixture
def tiny_model_config(architecture):
    return tiny_config(architecture)


@pytest.fixture
def make_config():
    """Factory for tiny model configurations: ``make_config("xlstm", seed=1)``."""
    return tiny_config
