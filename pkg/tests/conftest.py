import pytest

from logsig import load_verified_chain


@pytest.fixture(scope="session")
def m11():
    return load_verified_chain("M11")


@pytest.fixture(scope="session")
def m12():
    return load_verified_chain("M12")


@pytest.fixture(scope="session")
def m22():
    return load_verified_chain("M22")


@pytest.fixture(scope="session")
def m24():
    return load_verified_chain("M24")


@pytest.fixture(scope="session")
def a5():
    return load_verified_chain("A5")


@pytest.fixture(scope="session")
def s4():
    return load_verified_chain("S4")


@pytest.fixture(scope="session")
def s5():
    return load_verified_chain("S5")
