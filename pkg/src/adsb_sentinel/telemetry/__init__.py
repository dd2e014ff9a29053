"""
Telemetry module for adsb-sentinel.

Structured logging goes through structlog. Tracing uses OpenTelemetry when the
``observability`` extra is installed and falls back to no-op spans otherwise.
"""

from adsb_sentinel.telemetry.config import configure_telemetry
from adsb_sentinel.telemetry.facade import LoggingFacade, TracingFacade

__all__ = [
    "TracingFacade",
    "LoggingFacade",
    "configure_telemetry",
    "get_telemetry",
]


def get_telemetry(name: str) -> tuple[TracingFacade, LoggingFacade]:
    """
    Get tracer and logger instances for the given name.

    Args:
        name: The name to use for the tracer and logger

    Returns:
        A tuple containing a tracer and logger
    """
    return TracingFacade(name), LoggingFacade(name)
