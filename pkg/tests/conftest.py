"""Pytest configuration and fixtures."""
import math
import os
import sys

import pytest

# Add parent directory to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cyclogon.models import Point, PolygonPath, SideLengths5
from cyclogon.settings import Settings, get_settings, set_settings
from backend.elim_engine import clear_tables
from data.generators import ConfigurationGenerator


def regular_polygon(n: int, radius: float = 1.0) -> PolygonPath:
    """Counterclockwise regular n-gon on a circle about the origin."""
    return PolygonPath(tuple(
        Point(radius * math.cos(2 * math.pi * k / n), radius * math.sin(2 * math.pi * k / n))
        for k in range(n)
    ))


def pytest_addoption(parser):
    """Register custom CLI options for the test suite."""
    parser.addoption(
        "--performance",
        action="store_true",
        default=False,
        help="Run the acceptance-scale fuzzing and runtime budget tests",
    )
    parser.addoption(
        "--symbolic",
        action="store_true",
        default=False,
        help="Run the full symbolic cross-validations (slow)",
    )
    parser.addoption(
        "--fuzz-trials",
        type=int,
        default=200,
        help="Number of seeded trials per property test",
    )


def pytest_configure(config):
    """Declare custom markers to avoid pytest warnings."""
    config.addinivalue_line(
        "markers",
        "performance: marks performance tests that only run when --performance is supplied",
    )
    config.addinivalue_line(
        "markers",
        "symbolic: marks full symbolic derivations that only run when --symbolic is supplied",
    )


def pytest_collection_modifyitems(config, items):
    """Skip performance and symbolic tests unless their dedicated flag is present."""
    gates = {
        "performance": pytest.mark.skip(
            reason="Performance tests only run when --performance flag is provided",
        ),
        "symbolic": pytest.mark.skip(
            reason="Symbolic cross-validations only run when --symbolic flag is provided",
        ),
    }
    for marker, skip_marker in gates.items():
        if config.getoption(f"--{marker}"):
            continue
        for item in items:
            if marker in item.keywords:
                item.add_marker(skip_marker)


@pytest.fixture(scope='session')
def fuzz_trials(request):
    """Trial count for property-style loops"""
    return request.config.getoption("--fuzz-trials")


@pytest.fixture(scope='function')
def generator():
    """Seeded configuration generator"""
    return ConfigurationGenerator(seed=42)


@pytest.fixture(scope='session')
def regular_pentagon():
    """Regular pentagon inscribed in the unit circle"""
    return regular_polygon(5)


@pytest.fixture(scope='session')
def regular_hexagon():
    """Regular hexagon inscribed in the unit circle"""
    return regular_polygon(6)


@pytest.fixture(scope='session')
def unit_sides():
    """Side lengths of the regular pentagon with unit side"""
    return SideLengths5((1.0, 1.0, 1.0, 1.0, 1.0))


@pytest.fixture(scope='function')
def golden_dir(tmp_path):
    """Point golden-file lookups at an empty temporary directory."""
    previous = get_settings()
    set_settings(Settings(
        golden_dir=tmp_path / "golden",
        tolerance=previous.tolerance,
        workers=previous.workers,
        log_level=previous.log_level,
        oracle_samples=8,
    ))
    clear_tables()
    yield tmp_path / "golden"
    set_settings(previous)
    clear_tables()
