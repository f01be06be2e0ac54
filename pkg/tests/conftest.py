import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qmatrix import catalog  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20061015)


@pytest.fixture
def cdp():
    return catalog.cat_dog_pet()


@pytest.fixture
def cat(cdp):
    return cdp["cat"]


@pytest.fixture
def dog(cdp):
    return cdp["dog"]


@pytest.fixture
def pet(cdp):
    return cdp["pet"]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
