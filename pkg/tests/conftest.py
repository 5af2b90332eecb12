import math

import numpy as np
import pytest
from hypothesis import strategies as st

from ghz_timing.quantum import PhaseSettings

angles = st.floats(min_value=-4 * math.pi, max_value=4 * math.pi, allow_nan=False)
phase_settings = st.builds(PhaseSettings, angles, angles, angles, angles, angles)


def random_phase_tuples(n, seed=20011):
    rng = np.random.default_rng(seed)
    return [PhaseSettings(*row) for row in rng.uniform(-2 * math.pi, 2 * math.pi, size=(n, 5))]


@pytest.fixture(scope="session")
def phase_sample():
    return random_phase_tuples(1000)


ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion():
    def record(number, title, passed, detail=""):
        ACCEPTANCE_RESULTS.append((number, title, bool(passed), detail))
        print(f"criterion {number} [{'PASS' if passed else 'FAIL'}] {title} {detail}")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  {detail}")
