import pytest

from quohal.field import PrimeField, RationalField
from quohal.zoo import ZOO_NAMES, zoo_instance


@pytest.fixture(scope="session")
def f13():
    return PrimeField(13)


@pytest.fixture(scope="session")
def f101():
    return PrimeField(101)


@pytest.fixture(scope="session")
def fq():
    return RationalField()


@pytest.fixture(scope="session")
def zoo13():
    """Every built-in instance over GF(13), constructed once per session."""
    return {name: zoo_instance(name) for name in ZOO_NAMES}
