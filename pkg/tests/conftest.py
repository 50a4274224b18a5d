"""
Shared fixtures for the strata-atlas tests.
"""
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from core.event_bus import EventBus
from core.signature import parse_signature


@pytest.fixture(autouse=True)
def clean_event_queue():
    """Start and finish every test with an empty event queue."""
    bus = EventBus()
    bus.clear_queue()
    yield bus
    bus.clear_queue()


@pytest.fixture
def sig():
    """Parse signature text."""
    return parse_signature


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: sweeps over every stratum up to a large pole bound")
