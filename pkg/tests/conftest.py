"""Shared fixtures: the three workhorse logistic parameters."""

import pytest

from salimits.maps import make_map
from salimits.partition import compute_partition
from salimits.tower import build_tower


@pytest.fixture(scope="session")
def m32():
    return make_map("logistic", 3.2)


@pytest.fixture(scope="session")
def t32(m32):
    return build_tower(m32)


@pytest.fixture(scope="session")
def part32(t32):
    return compute_partition(t32)


@pytest.fixture(scope="session")
def m355():
    return make_map("logistic", 3.55)


@pytest.fixture(scope="session")
def t355(m355):
    return build_tower(m355)


@pytest.fixture(scope="session")
def part355(t355):
    return compute_partition(t355)


@pytest.fixture(scope="session")
def m384():
    return make_map("logistic", 3.84)


@pytest.fixture(scope="session")
def t384(m384):
    return build_tower(m384)


@pytest.fixture(scope="session")
def part384(t384):
    return compute_partition(t384)
