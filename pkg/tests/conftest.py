import pytest

from romanoff_lab.sieve import FactorSieve, PrimeList, build_sieve


@pytest.fixture(scope="session")
def sieve1m() -> FactorSieve:
    return build_sieve(10**6)


@pytest.fixture(scope="session")
def sieve10k() -> FactorSieve:
    return build_sieve(10**4)


@pytest.fixture(scope="session")
def primes1m() -> PrimeList:
    # covers x = 1e6 plus the largest shift used by the twin-style counts
    return PrimeList.build(1_001_000)


@pytest.fixture(scope="session")
def primes100k() -> PrimeList:
    return PrimeList.build(10**5)
