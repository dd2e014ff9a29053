"""
Configuration functions for the telemetry module.

Reads sensible defaults from the environment, including the standard
OpenTelemetry variables.
"""

import logging
import os
import sys
from typing import Any, Optional

import structlog

from adsb_sentinel.config import get_env_bool, get_env_config


def get_env_dict(name: str, default: Optional[dict[str, str]] = None) -> dict[str, str]:
    """
    Get a dictionary from a comma-separated ``key=value`` environment variable.

    Args:
        name: The name of the environment variable
        default: The default value if the environment variable is not set

    Returns:
        The dictionary
    """
    value = os.environ.get(name)
    if not value:
        return default or {}

    result = {}
    for pair in value.split(","):
        if "=" in pair:
            key, val = pair.split("=", 1)
            result[key.strip()] = val.strip()
    return result


def configure_telemetry(
    service_name: Optional[str] = None,
    log_level: Optional[str] = None,
    json_logs: Optional[bool] = None,
    trace_enabled: Optional[bool] = None,
    trace_exporters: Optional[list[str]] = None,
) -> bool:
    """
    Configure structlog and, when available, OpenTelemetry tracing.

    Args:
        service_name: The name of the service
        log_level: The log level; defaults to ADSB_SENTINEL_LOG_LEVEL or INFO
        json_logs: Render JSON lines instead of console output
        trace_enabled: Whether tracing is enabled
        trace_exporters: The trace exporters to use ("console", "otlp")

    Returns:
        True if tracing was configured, False if only logging was
    """
    if log_level is None:
        log_level = str(get_env_config("log_level", "INFO")).upper()
    if json_logs is None:
        json_logs = get_env_bool("log_json", False)
    _configure_structlog(log_level, json_logs)

    if trace_enabled is None:
        trace_enabled = not _env_flag("OTEL_SDK_DISABLED", False)
    if not trace_enabled:
        return False

    if service_name is None:
        service_name = os.environ.get("OTEL_SERVICE_NAME", "adsb-sentinel")
    return _configure_tracing(service_name, trace_exporters)


def _env_flag(name: str, default: bool = False) -> bool:
    """Boolean lookup for unprefixed variables such as OTEL_SDK_DISABLED."""
    value = os.environ.get(name)
    if value is None:
        return default
    return value.lower() in ("true", "1", "yes", "y", "t")


def _configure_tracing(service_name: str, exporters: Optional[list[str]]) -> bool:
    try:
        from opentelemetry import trace
        from opentelemetry.sdk.resources import Resource
        from opentelemetry.sdk.trace import TracerProvider
        from opentelemetry.sdk.trace.export import BatchSpanProcessor
    except ImportError:
        return False

    attributes = {**get_env_dict("OTEL_RESOURCE_ATTRIBUTES")}
    attributes["service.name"] = service_name
    provider = TracerProvider(resource=Resource.create(attributes))

    if exporters is None:
        exporter_env = os.environ.get("OTEL_TRACES_EXPORTER", "console")
        exporters = [ex.strip() for ex in exporter_env.split(",") if ex.strip()]

    for exporter_name in exporters:
        if exporter_name == "console":
            from opentelemetry.sdk.trace.export import ConsoleSpanExporter

            provider.add_span_processor(BatchSpanProcessor(ConsoleSpanExporter()))
        elif exporter_name == "otlp":
            try:
                from opentelemetry.exporter.otlp.proto.grpc.trace_exporter import (
                    OTLPSpanExporter,
                )
            except ImportError:
                continue
            endpoint = os.environ.get("OTEL_EXPORTER_OTLP_ENDPOINT")
            exporter = OTLPSpanExporter(endpoint=endpoint) if endpoint else OTLPSpanExporter()
            provider.add_span_processor(BatchSpanProcessor(exporter))

    trace.set_tracer_provider(provider)
    return True


def _configure_structlog(
    log_level: str, json_logs: bool, processors: Optional[list[Any]] = None
) -> None:
    # stderr keeps stdout free for tables and JSON reports
    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, log_level, logging.INFO),
        force=True,
    )

    renderer = (
        structlog.processors.JSONRenderer()
        if json_logs
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    chain = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
    ]
    if processors:
        chain.extend(processors)
    chain.append(renderer)

    structlog.configure(
        processors=chain,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
