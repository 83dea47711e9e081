import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sgcat.corpus import FIXTURE_NAMES, load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def fx():
    """All named fixtures, loaded once."""
    return {name: load_fixture(name) for name in FIXTURE_NAMES}
