"""
Telemetry facades.

The facades give every component the same logging and tracing API whether or
not OpenTelemetry is installed.
"""

from typing import Any, ContextManager, Optional

import structlog

from adsb_sentinel.telemetry.tracing import NoOpSpan

try:
    from opentelemetry import trace
    from opentelemetry.trace.status import Status, StatusCode

    _HAS_OTEL = True
except ImportError:
    _HAS_OTEL = False


class TracingFacade:
    """Facade for tracing operations."""

    def __init__(self, name: str):
        """
        Initialize a new tracing facade.

        Args:
            name: The name of the tracer
        """
        self.name = name
        self.tracer = trace.get_tracer(name) if _HAS_OTEL else None

    def start_as_current_span(
        self, name: str, attributes: Optional[dict[str, Any]] = None
    ) -> ContextManager:
        """
        Start a new span and set it as the current span.

        Args:
            name: The name of the span
            attributes: Optional attributes to set on the span

        Returns:
            A context manager that will end the span when exited
        """
        if self.tracer is not None:
            return self.tracer.start_as_current_span(name, attributes=attributes)
        return NoOpSpan(name, attributes)


class LoggingFacade:
    """Facade for structured logging with trace correlation."""

    def __init__(self, name: str):
        """
        Initialize a new logging facade.

        Args:
            name: The name of the logger
        """
        self.name = name
        self.logger = structlog.get_logger(name)

    def _add_trace_context(self, kwargs: dict[str, Any]) -> dict[str, Any]:
        if _HAS_OTEL:
            context = trace.get_current_span().get_span_context()
            if getattr(context, "is_valid", False):
                kwargs["trace_id"] = format(context.trace_id, "032x")
                kwargs["span_id"] = format(context.span_id, "016x")
        return kwargs

    def _mark_span_error(self) -> None:
        if _HAS_OTEL:
            trace.get_current_span().set_status(Status(StatusCode.ERROR))

    def debug(self, event: str, **kwargs: Any) -> None:
        self.logger.debug(event, **self._add_trace_context(kwargs))

    def info(self, event: str, **kwargs: Any) -> None:
        self.logger.info(event, **self._add_trace_context(kwargs))

    def warning(self, event: str, **kwargs: Any) -> None:
        self.logger.warning(event, **self._add_trace_context(kwargs))

    def error(self, event: str, **kwargs: Any) -> None:
        """
        Log an error and mark the current span as failed.

        Args:
            event: The event name
            **kwargs: Additional key-value pairs to include in the log
        """
        self._mark_span_error()
        self.logger.error(event, **self._add_trace_context(kwargs))
