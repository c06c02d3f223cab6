import pytest

from leibniz import catalog


@pytest.fixture(scope="session")
def alg():
    """Catalog lookup, memoized for the whole session."""
    cache = {}

    def get(key):
        if key not in cache:
            cache[key] = catalog.get(key)
        return cache[key]

    return get
