import numpy as np
import pytest

from mmscramble.floquet import make_circuit


@pytest.fixture(scope="session")
def circuit_cache():
    cache = {}

    def get(kind, N, rule, gate="W"):
        key = (kind, N, rule, gate)
        if key not in cache:
            cache[key] = make_circuit(kind, N, rule, gate)
        return cache[key]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
