import pytest

from algebra.standard import cyclic_group, klein_group, meet_semilattice, symmetric_group_s3
from z4.z4_algebra import z4_algebra


@pytest.fixture(scope='session')
def z4_group():
    return cyclic_group(4)


@pytest.fixture(scope='session')
def klein():
    return klein_group()


@pytest.fixture(scope='session')
def z6_group():
    return cyclic_group(6)


@pytest.fixture(scope='session')
def s3():
    return symmetric_group_s3()


@pytest.fixture(scope='session')
def semilattice():
    return meet_semilattice()


@pytest.fixture(scope='session')
def z4_2():
    return z4_algebra(2)
