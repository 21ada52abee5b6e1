import pytest

from lrckit import fixtures
from lrckit.lrc import build_code


@pytest.fixture(scope="session")
def example1_layout():
    return fixtures.example1_layout()


@pytest.fixture(scope="session")
def example1_code(example1_layout):
    return build_code(example1_layout)


@pytest.fixture(scope="session")
def example1_check():
    return fixtures.example1_check()


@pytest.fixture(scope="session")
def example2_check():
    return fixtures.example2_check()


@pytest.fixture(scope="session")
def ag13_layout():
    return fixtures.ag13_layout()


@pytest.fixture(scope="session")
def ag13_code(ag13_layout):
    return build_code(ag13_layout)
