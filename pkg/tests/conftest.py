import pytest

import omegalab as ol


@pytest.fixture(scope="session")
def sieve_1e6():
    return ol.build_factor_sieve(1, 10**6)


@pytest.fixture(scope="session")
def omega_1e6(sieve_1e6):
    return ol.omega_range(sieve_1e6)


@pytest.fixture(scope="session")
def window():
    return ol.build_window()
