import random

import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rnd():
    return random.Random(20240601)


def random_input(rnd, n, length=None, alphabet=None):
    length = 2 * n - 1 if length is None else length
    alphabet = alphabet or rnd.choice([max(1, n // 4), n, 2 * n])
    return [rnd.randint(1, alphabet) for _ in range(length)]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
