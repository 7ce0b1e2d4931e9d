import pytest

from nonelliptic import bundled_form


@pytest.fixture(scope="session")
def schoen_form():
    return bundled_form("schoen_s4_25")


@pytest.fixture(scope="session")
def sqrt2_form():
    return bundled_form("s2_512_sqrt2")
