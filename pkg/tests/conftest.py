import pytest

from glab.liecore import builtin_algebra


@pytest.fixture(scope="session")
def sl2():
    return builtin_algebra("sl2")


@pytest.fixture(scope="session")
def sl3():
    return builtin_algebra("sl3")
