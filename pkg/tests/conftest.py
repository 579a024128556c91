import sys

import pytest
from hypothesis import HealthCheck, settings

from kcgds import _pycore, cliques, datasets, densest

# the backend fixture patches module globals once per test, which is what we want
settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

try:
    from kcgds import _core
except ImportError:
    _core = None

BACKENDS = {"python": _pycore}
if _core is not None:
    BACKENDS["cython"] = _core


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run the test once per available kernel implementation."""
    mod = BACKENDS[request.param]
    monkeypatch.setattr(cliques, "kernels", mod)
    monkeypatch.setattr(densest, "kernels", mod)
    return request.param


@pytest.fixture(scope="session")
def karate():
    return datasets.load_dataset("karate")


@pytest.fixture(scope="session")
def lesmis():
    return datasets.load_dataset("lesmis")


@pytest.fixture(scope="session")
def football():
    return datasets.load_dataset("football")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
