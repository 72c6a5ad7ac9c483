"""
Pytest configuration for integration tests.

The full corpus is expensive, so it is computed once per session at the
default options and shared.
"""
import json
from pathlib import Path
from typing import Any, Callable

import pytest

from derivator_combinatorics.corpus import VerificationReport, verify_corpus


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "integration: marks tests as integration tests (full corpus)")


@pytest.fixture(scope="session")
def full_report() -> VerificationReport:
    """The corpus at the default options (max_n=6, swindle bound 20)."""
    return verify_corpus()


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], Path]:
    """Write a JSON document into the test's temporary directory and return its path."""

    def write(name: str, data: Any) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path

    return write
