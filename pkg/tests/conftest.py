import pytest

from quadring.netfib import SearchResult, random_net_search

ACCEPTANCE_PRIMES = (3, 5, 7, 11, 13)


@pytest.fixture(scope="session")
def accepted_net() -> SearchResult:
    """One search-accepted (4,2) net shared across tests."""
    return random_net_search(4, 2, ACCEPTANCE_PRIMES, seed=3)


@pytest.fixture(scope="session")
def accepted_pencil() -> SearchResult:
    """One search-accepted (2,1) pencil shared across tests."""
    return random_net_search(2, 1, ACCEPTANCE_PRIMES, seed=1)
