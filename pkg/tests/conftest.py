import json
import pathlib
import random

import pytest

from clsforge.pairing import MockSuite

GOLDEN = pathlib.Path(__file__).parent / "golden"

# criterion number -> (passed, description); filled in by test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def suite():
    return MockSuite(101)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture(scope="session")
def oracle_vectors():
    return json.loads((GOLDEN / "oracle_vectors.json").read_text())


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, desc = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {desc}")
