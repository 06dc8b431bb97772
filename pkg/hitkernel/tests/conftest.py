import os

import pytest


DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", help="run slow tests")


def pytest_runtest_setup(item):
    if 'slow' in item.keywords and not item.config.getoption("--runslow"):
        pytest.skip("need --runslow option to run")


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def write_hk(tmpdir):
    """Write ``.hk`` sources into a temporary directory."""
    def write(name, source):
        path = tmpdir.join(name)
        path.write(source)
        return str(path)
    return write
