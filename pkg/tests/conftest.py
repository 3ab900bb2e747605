import pytest

from bicox.coxeter import build_group, classify_spec


def build(spec: str, **kwargs):
    return build_group(classify_spec(spec), **kwargs)


@pytest.fixture(scope="session")
def tables():
    """Shared cache of built groups, keyed by type spec."""
    cache = {}

    def get(spec: str):
        if spec not in cache:
            cache[spec] = build(spec)
        return cache[spec]

    return get


@pytest.fixture(scope="session")
def a2(tables):
    return tables("A2")


@pytest.fixture(scope="session")
def a3(tables):
    return tables("A3")


@pytest.fixture(scope="session")
def b3(tables):
    return tables("B3")
