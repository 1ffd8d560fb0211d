import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rookposet.instances import build_rook, build_symmetric  # noqa: E402


@pytest.fixture(scope="session")
def r2():
    return build_rook(2)


@pytest.fixture(scope="session")
def r3():
    return build_rook(3)


@pytest.fixture(scope="session")
def r4():
    return build_rook(4)


@pytest.fixture(scope="session")
def s3():
    return build_symmetric(3)
