"""Shared fixtures: one engine per test and one long principal series per
session (the expensive analysis inputs are reused across test modules)."""

from __future__ import annotations

import pytest

from permmobius import MobiusEngine, principal_series


@pytest.fixture()
def engine() -> MobiusEngine:
    return MobiusEngine()


@pytest.fixture(scope="session")
def series_20001():
    """Principal series long enough for every desk-scale analysis check."""
    return principal_series(20001)


@pytest.fixture(scope="session")
def series_1001():
    return principal_series(1001)
