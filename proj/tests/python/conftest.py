import os

import pytest


def pytest_addoption(parser):
    parser.addoption("--cli", default=os.environ.get("DCICHECK_CLI", ""), help="path to the dcicheck binary")


@pytest.fixture
def cli(request):
    path = request.config.getoption("--cli")
    if not path:
        pytest.skip("no dcicheck binary given")
    return path
