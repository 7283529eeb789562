import pytest

from flatpoly.singer import construct_singer


@pytest.fixture(scope="session")
def singer_cache():
    """Memoized canonical Singer sets keyed by (p, m)."""
    cache = {}

    def get(p, m=1):
        if (p, m) not in cache:
            cache[(p, m)] = construct_singer(p, m)
        return cache[(p, m)]

    return get
