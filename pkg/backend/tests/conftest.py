import logging
import os
import sys

import pytest

# Add the backend directory to the Python path for tests
backend_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, backend_dir)

from app.models.schemas import GameConfig, GameVariant  # noqa: E402
from app.services.solver import Solver  # noqa: E402
from app.services.storage import FileSystemStorage  # noqa: E402

# Set up logging
logger = logging.getLogger(__name__)


def make_config(k, N, variant="general", c=None):
    """Shorthand used across the test modules."""
    if variant == "restricted":
        return GameConfig.of(k, N, GameVariant.restricted(c or 1))
    if variant == "mmb":
        return GameConfig.of(k, N, GameVariant.maker_breaker())
    return GameConfig.of(k, N, GameVariant.general())


@pytest.fixture(scope="session")
def shared_solver():
    """One solver for the whole session; tables are per rule set, so sharing is sound."""
    logger.info("Creating shared solver")
    return Solver()


@pytest.fixture
def storage():
    """Create a FileSystemStorage instance for testing."""
    return FileSystemStorage(max_retries=1, retry_delay=0)


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    """Point relative --output paths at a temporary directory."""
    from app.core.settings import settings

    monkeypatch.setattr(settings, "OUTPUT_DIR", str(tmp_path))
    return tmp_path


@pytest.fixture
def general_2_1():
    return make_config(2, 1)


@pytest.fixture
def config_of():
    """Factory fixture: config_of(k, N, variant="general", c=None)."""
    return make_config
