import pytest
from hypothesis import HealthCheck, settings

from l2stokes import bessel

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

_BACKENDS = [pytest.param(bessel.python_backend(), id="python")]
if bessel.compiled_backend() is not None:
    _BACKENDS.append(pytest.param(bessel.compiled_backend(), id="cython"))


@pytest.fixture(params=_BACKENDS)
def kernel(request):
    """Each Bessel kernel module that is importable in this build."""
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
