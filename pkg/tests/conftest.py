import pytest

from lanemorse import solve_nodal


@pytest.fixture(scope="session")
def nodal():
    """Session-cached factory for nodal solutions (keyed by (p, N))."""
    cache = {}

    def get(p, N=2, **kw):
        key = (p, N, tuple(sorted(kw.items())))
        if key not in cache:
            cache[key] = solve_nodal(p, N=N, **kw)
        return cache[key]

    return get
