"""Shared pytest fixtures for test suite."""
import pytest

from config.settings import RuntimeSettings
from deps.dependencies import AlgebraDependencies
from tools.base_field import get_base_field
from tools.ffield import get_field_ctx
from tools.parsing import parse_bipoly, parse_ratfunc, parse_upoly


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Keeps DTORS_* variables from the caller's shell out of every test."""
    for name in ("DTORS_THREADS", "DTORS_SIZE_CAP", "DTORS_ELL_MAX", "DTORS_RETRY_LIMIT", "DTORS_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("DTORS_THREADS", "1")


@pytest.fixture
def gf2():
    return get_base_field(2, 1)


@pytest.fixture
def gf3():
    return get_base_field(3, 1)


@pytest.fixture
def gf4():
    """F_4 as a base field, modulus t^2 + t + 1."""
    return get_base_field(2, 2)


@pytest.fixture
def f4():
    """F_4 = F_2[x]/(x^2 + x + 1)."""
    return get_field_ctx(2, 1, 2)


@pytest.fixture
def f8():
    return get_field_ctx(2, 1, 3)


@pytest.fixture
def f16():
    """F_16 = F_2[x]/(x^4 + x + 1)."""
    return get_field_ctx(2, 1, 4)


@pytest.fixture
def f9():
    """F_9 = F_3[x]/(x^2 + 1)."""
    return get_field_ctx(3, 1, 2)


@pytest.fixture
def upoly(gf2):
    """Parser for polynomials in t over F_2."""
    return lambda text, field=gf2: parse_upoly(text, field)


@pytest.fixture
def bipoly(gf2):
    """Parser for polynomials in t and z over F_2."""
    return lambda text, field=gf2: parse_bipoly(text, field)


@pytest.fixture
def ratfunc(gf2):
    return lambda text, field=gf2: parse_ratfunc(text, field)


@pytest.fixture
def settings():
    return RuntimeSettings(threads=2, size_cap=10_000, ell_max=2, retry_limit=8)


@pytest.fixture
def algebra_dependencies(settings):
    """Provides an AlgebraDependencies instance with small limits."""
    return AlgebraDependencies(settings=settings, seed=0, run_context={"test": "data"})
