"""Tests for environment configuration."""

import os
from unittest.mock import patch

import pytest

from adsb_sentinel.config import get_env_bool, get_env_config, get_worker_count, merge_configs


def test_get_env_config_uses_the_prefix():
    with patch.dict(os.environ, {"ADSB_SENTINEL_LOG_LEVEL": "DEBUG", "LOG_LEVEL": "ERROR"}):
        assert get_env_config("log_level") == "DEBUG"
    with patch.dict(os.environ, {}, clear=True):
        assert get_env_config("log_level") is None
        assert get_env_config("log_level", "INFO") == "INFO"


@pytest.mark.parametrize(
    "value, expected",
    [
        ("true", True),
        ("1", True),
        ("yes", True),
        ("y", True),
        ("T", True),
        ("0", False),
        ("no", False),
    ],
)
def test_get_env_bool(value, expected):
    with patch.dict(os.environ, {"ADSB_SENTINEL_LOG_JSON": value}):
        assert get_env_bool("log_json") is expected


def test_get_env_bool_default():
    with patch.dict(os.environ, {}, clear=True):
        assert get_env_bool("log_json") is False
        assert get_env_bool("log_json", True) is True


@pytest.mark.parametrize("value, expected", [("3", 3), ("1", 1)])
def test_worker_count_from_environment(value, expected):
    with patch.dict(os.environ, {"ADSB_SENTINEL_THREADS": value}):
        assert get_worker_count() == expected


@pytest.mark.parametrize("value", ["0", "-2", "many"])
def test_invalid_worker_count_falls_back_to_cores(value):
    with patch.dict(os.environ, {"ADSB_SENTINEL_THREADS": value}), patch(
        "adsb_sentinel.config.os.cpu_count", return_value=6
    ):
        assert get_worker_count() == 6


def test_worker_count_without_environment():
    with patch.dict(os.environ, {}, clear=True), patch(
        "adsb_sentinel.config.os.cpu_count", return_value=None
    ):
        assert get_worker_count() == 1


def test_merge_configs():
    base = {"epochs": 20, "model": {"embedding_dim": 64, "num_blocks": 4}}
    override = {"epochs": 5, "model": {"embedding_dim": 8}, "seed": 3}
    merged = merge_configs(base, override)
    assert merged == {"epochs": 5, "model": {"embedding_dim": 8, "num_blocks": 4}, "seed": 3}
    assert base["model"]["embedding_dim"] == 64
    assert merge_configs(base) == base
    assert merge_configs(base) is not base
