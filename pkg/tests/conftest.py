"""
Shared fixtures
Tests never touch the default cache directory
"""

import pytest

from realbetti.config import settings
from realbetti.engine.recursion import RecursionEngine, set_engine
from realbetti.utils.disk_cache import DiskCache


@pytest.fixture(autouse=True, scope="session")
def _cacheless_shared_engine():
    set_engine(RecursionEngine(settings, cache=None))
    yield
    set_engine(None)


@pytest.fixture(scope="module")
def engine() -> RecursionEngine:
    """Memoizing engine shared by the tests of one module"""
    return RecursionEngine(settings, cache=None)


@pytest.fixture
def raw_engine() -> RecursionEngine:
    """Engine that memoizes on d itself"""
    return RecursionEngine(settings.model_copy(update={"normalize_degree": False}), cache=None)


@pytest.fixture
def disk_cache(tmp_path) -> DiskCache:
    return DiskCache(tmp_path / "cache")
