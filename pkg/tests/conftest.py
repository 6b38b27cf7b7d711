import pytest

from factmod import build_context


@pytest.fixture(scope="session")
def ctx_factory():
    cache = {}

    def get(p, kind="factorial"):
        if (p, kind) not in cache:
            cache[(p, kind)] = build_context(p, kind)
        return cache[(p, kind)]

    return get


@pytest.fixture
def c3(ctx_factory):
    return ctx_factory(3)


@pytest.fixture
def c5(ctx_factory):
    return ctx_factory(5)


@pytest.fixture
def c7(ctx_factory):
    return ctx_factory(7)
