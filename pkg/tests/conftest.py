import json
from functools import lru_cache
from pathlib import Path

import pytest

from quadweb.exactnum import PrimeField, random_prime
from quadweb.webquadrics import Web

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_matrices(name: str) -> list:
    return json.loads((FIXTURES / f"{name}.json").read_text())["matrices"]


@lru_cache(maxsize=None)
def prime(k: int = 0) -> int:
    return random_prime(62, f"tests-{k}")


def web_over_prime(name: str, k: int = 0) -> Web:
    return Web.from_matrices(fixture_matrices(name), PrimeField(prime(k)))


@lru_cache(maxsize=None)
def certificate(name: str) -> dict:
    """Full two-prime analysis of a fixture, shared by every test in the session."""
    from quadweb.webquadrics.certificate import Options, analyze

    return analyze(fixture_matrices(name), Options(seed=0))


@pytest.fixture
def F():
    return PrimeField(prime(0))


@pytest.fixture(scope="session")
def example_2_1():
    return fixture_matrices("example_2_1")


@pytest.fixture(scope="session")
def example_5_5():
    return fixture_matrices("example_5_5")


# -- one pass/fail line per acceptance criterion ------------------------------------------------

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and short title")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when != "call":
        return
    n, title = mark.args
    status = "PASS" if report.passed else "FAIL"
    detail = ""
    if report.failed and call.excinfo is not None:
        detail = str(call.excinfo.value).splitlines()[0] if str(call.excinfo.value) else call.excinfo.typename
    _criteria[n] = (status, f"{title}" + (f" ({detail})" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, text = _criteria[n]
        terminalreporter.write_line(f"criterion {n:>2}: {status}  {text}")
