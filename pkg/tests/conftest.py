"""
pytest configuration for nzflow tests.

Adds src directory to sys.path to enable proper imports for testing.
This allows tests to use absolute imports like "from core import ..."
which work when the CLI and server are running.
"""

import sys
from pathlib import Path

import pytest

# Add src directory to path
src_path = Path(__file__).parent.parent / "src"
sys.path.insert(0, str(src_path))

from core.config import ConfigManager  # noqa: E402
from core.graph import Graph, build_graph  # noqa: E402
from solvers.corpus import gen_complete, gen_petersen  # noqa: E402


@pytest.fixture(autouse=True)
def fresh_config():
    """Reload configuration for every test so env overrides do not leak."""
    ConfigManager.reset()
    yield
    ConfigManager.reset()


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Point the configured output directory at a temporary folder."""
    monkeypatch.setenv("NZFLOW_OUTPUT__DIRECTORY", str(tmp_path))
    ConfigManager.reset()
    return tmp_path


@pytest.fixture
def triangle() -> Graph:
    """Directed triangle 0 -> 1 -> 2 -> 0."""
    return build_graph(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def digon() -> Graph:
    """Two parallel edges between 0 and 1, both stored as 0 -> 1."""
    return build_graph(2, [(0, 1), (0, 1)])


@pytest.fixture
def k4() -> Graph:
    return gen_complete(4)


@pytest.fixture
def petersen() -> Graph:
    return gen_petersen()

