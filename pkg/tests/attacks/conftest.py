"""Fixtures for attack tests."""

import pytest

from .factories import make_flight


@pytest.fixture
def flight():
    return make_flight(12)
