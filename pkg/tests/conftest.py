import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from effectkit import fixtures


@pytest.fixture(scope="session")
def finite_fixtures():
    return fixtures.finite_catalog()

@pytest.fixture(scope="session")
def interval_fixtures():
    return fixtures.interval_catalog()


@pytest.fixture(scope="session")
def c4():
    return fixtures.chain(4)


@pytest.fixture(scope="session")
def b4():
    return fixtures.b4()


@pytest.fixture(scope="session")
def hs4():
    return fixtures.hs4()


@pytest.fixture(scope="session")
def lex1():
    return fixtures.lex1()


@pytest.fixture(scope="session")
def lex21():
    return fixtures.lex21()


@pytest.fixture(scope="session")
def lex3():
    return fixtures.lex3()


@pytest.fixture(scope="session")
def sq():
    return fixtures.sq()


@pytest.fixture(scope="session")
def k61():
    return fixtures.k61()
