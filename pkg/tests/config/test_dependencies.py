"""Unit tests for dependency injection (deps/dependencies.py)."""
from deps.dependencies import AlgebraDependencies


class TestAlgebraDependencies:
    """Tests for AlgebraDependencies dataclass."""

    def test_defaults(self, settings):
        deps = AlgebraDependencies(settings=settings)
        assert deps.seed == 0
        assert deps.run_context == {}
        assert deps.threads is None

    def test_fixture(self, algebra_dependencies):
        assert algebra_dependencies.run_context == {"test": "data"}
        assert algebra_dependencies.settings.retry_limit == 8

    def test_worker_count_defaults_to_settings(self, settings):
        assert AlgebraDependencies(settings=settings).worker_count == 2

    def test_worker_count_is_bounded(self, settings):
        assert AlgebraDependencies(settings=settings, threads=16).worker_count == 2
        assert AlgebraDependencies(settings=settings, threads=1).worker_count == 1
        assert AlgebraDependencies(settings=settings, threads=0).worker_count == 1

    def test_run_context_is_not_shared(self, settings):
        first = AlgebraDependencies(settings=settings)
        first.run_context["command"] = "order"
        assert AlgebraDependencies(settings=settings).run_context == {}
