"""Tests for the telemetry module."""
