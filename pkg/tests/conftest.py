import pytest

from mopguard.families import random_mop

CORPUS_SIZE = 500
CORPUS_MAX_N = 40

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE = {}


def corpus_seed(n: int, i: int) -> int:
    return (n << 20) | i


@pytest.fixture(scope="session")
def random_corpus():
    """500 seeded random MOPs for every order 3..40."""
    return {
        n: [random_mop(n, corpus_seed(n, i)) for i in range(CORPUS_SIZE)]
        for n in range(3, CORPUS_MAX_N + 1)
    }


@pytest.fixture
def record():
    def _record(number: int, passed: bool, detail: str) -> None:
        ACCEPTANCE[number] = (passed, detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        passed, detail = ACCEPTANCE[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {detail}")
