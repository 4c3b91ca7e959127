import pytest

from effectalgebras import catalog, enumerate_algebras


@pytest.fixture(scope="session")
def enumerations():
    """Cached enumeration results keyed by order."""
    cache = {}

    def get(n):
        if n not in cache:
            cache[n] = enumerate_algebras(n)
        return cache[n]

    return get


@pytest.fixture(scope="session")
def entries():
    return catalog.entries()
