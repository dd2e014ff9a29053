"""Tests for telemetry configuration."""

import os
from unittest.mock import patch

import pytest
import structlog

from adsb_sentinel.telemetry import configure_telemetry
from adsb_sentinel.telemetry.config import _configure_structlog, get_env_dict

CONFIG = "adsb_sentinel.telemetry.config"


@pytest.fixture(autouse=True)
def reset_structlog():
    yield
    structlog.reset_defaults()


def test_get_env_dict():
    with patch.dict(os.environ, {"TEST_DICT": "service.version=1, deployment=desk,broken"}):
        assert get_env_dict("TEST_DICT") == {"service.version": "1", "deployment": "desk"}
    with patch.dict(os.environ, {}, clear=True):
        assert get_env_dict("TEST_DICT") == {}
        assert get_env_dict("TEST_DICT", {"a": "b"}) == {"a": "b"}


def test_explicit_arguments_win():
    with patch(f"{CONFIG}._configure_structlog") as configure_structlog, patch(
        f"{CONFIG}._configure_tracing"
    ) as configure_tracing:
        assert configure_telemetry(log_level="DEBUG", json_logs=True, trace_enabled=False) is False
    configure_structlog.assert_called_once_with("DEBUG", True)
    configure_tracing.assert_not_called()


def test_environment_defaults():
    env = {"ADSB_SENTINEL_LOG_LEVEL": "warning", "ADSB_SENTINEL_LOG_JSON": "yes"}
    with patch.dict(os.environ, env, clear=True), patch(
        f"{CONFIG}._configure_structlog"
    ) as configure_structlog, patch(f"{CONFIG}._configure_tracing", return_value=True):
        configure_telemetry()
    configure_structlog.assert_called_once_with("WARNING", True)


def test_sdk_disabled_skips_tracing():
    with patch.dict(os.environ, {"OTEL_SDK_DISABLED": "true"}, clear=True), patch(
        f"{CONFIG}._configure_structlog"
    ), patch(f"{CONFIG}._configure_tracing") as configure_tracing:
        assert configure_telemetry() is False
    configure_tracing.assert_not_called()


def test_service_name_from_environment():
    with patch.dict(os.environ, {"OTEL_SERVICE_NAME": "ids-desk"}, clear=True), patch(
        f"{CONFIG}._configure_structlog"
    ), patch(f"{CONFIG}._configure_tracing", return_value=True) as configure_tracing:
        assert configure_telemetry(trace_enabled=True) is True
    configure_tracing.assert_called_once_with("ids-desk", None)


def test_default_service_name():
    with patch.dict(os.environ, {}, clear=True), patch(f"{CONFIG}._configure_structlog"), patch(
        f"{CONFIG}._configure_tracing", return_value=False
    ) as configure_tracing:
        configure_telemetry(trace_enabled=True, trace_exporters=["console"])
    configure_tracing.assert_called_once_with("adsb-sentinel", ["console"])


@pytest.mark.parametrize(
    "json_logs, renderer",
    [(True, structlog.processors.JSONRenderer), (False, structlog.dev.ConsoleRenderer)],
)
def test_structlog_renderer(json_logs, renderer):
    _configure_structlog("INFO", json_logs)
    assert isinstance(structlog.get_config()["processors"][-1], renderer)


def test_extra_processors_run_before_the_renderer():
    def tag(logger, method, event):
        event["component"] = "ids"
        return event

    _configure_structlog("INFO", True, processors=[tag])
    processors = structlog.get_config()["processors"]
    assert processors[-2] is tag
