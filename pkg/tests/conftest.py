import pytest

from uawork import Partition, builtin, parse_algebra


@pytest.fixture
def paper():
    return builtin("paper-z6")


@pytest.fixture
def theta():
    return Partition.parse("0 3|1 4|2 5")


@pytest.fixture
def one_element():
    return parse_algebra("algebra One\nsize 1\nop c 0\n0")
