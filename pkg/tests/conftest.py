import pytest

from dlconn.combinatorics import coxeter, twist
from dlconn.oracle import flags


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run exhaustive slow tests')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: exhaustive test, skipped unless --runslow is given')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='session')
def a2():
    return coxeter.datum_of_type('A2')


@pytest.fixture(scope='session')
def a3():
    return coxeter.datum_of_type('A3')


@pytest.fixture(scope='session')
def split_a2(a2):
    return twist.identity_twist(a2)


@pytest.fixture(scope='session')
def twisted_a2(a2):
    return twist.parse_twist(a2, '2A2')


@pytest.fixture(scope='session')
def twisted_a3(a3):
    return twist.parse_twist(a3, '2A3')


@pytest.fixture(scope='session')
def gl2():
    return flags.parse_realization('GL2@q=2', [1, 2])


@pytest.fixture(scope='session')
def gl3():
    return flags.parse_realization('GL3@q=2', [1, 2])


@pytest.fixture(scope='session')
def u3():
    return flags.parse_realization('U3@q=2', [1, 2, 3])


@pytest.fixture(scope='session')
def u4():
    return flags.parse_realization('U4@q=2', [1])
