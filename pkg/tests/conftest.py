import sys
from pathlib import Path

import pytest

from polykay.cli import load_sample

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def sample30():
    """Thirty univariate observations."""
    return load_sample(str(DATA_DIR / "sample30.csv"))[:, 0]


@pytest.fixture(scope="session")
def data1():
    """Eleven bivariate observations (file has a header row)."""
    return load_sample(str(DATA_DIR / "data1.csv"))


@pytest.fixture(scope="session")
def data2():
    """Six trivariate observations."""
    return load_sample(str(DATA_DIR / "data2.csv"))


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance report lines collected during the run."""
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.report_line(number))
